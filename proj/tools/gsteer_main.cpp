#include <iostream>

#include "gsteer/cli.hpp"

int main(int argc, char** argv) { return gsteer::cli::run(argc, argv, std::cout, std::cerr); }
