#pragma once

// Bundled reference checks on the catalog instances.

#include <string>
#include <vector>

#include "gsteer/quantifier.hpp"

namespace gsteer::repro {

struct Options {
  double tol = 1e-8;
  SolverConfig solver;
  std::size_t monte_carlo_trials = 10000;
};

struct Row {
  std::string id;
  std::string claim;
  bool passed = false;
  std::string evidence;
};

std::vector<Row> run(const Options& options);

}  // namespace gsteer::repro
