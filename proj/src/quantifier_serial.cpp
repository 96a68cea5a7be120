#include "gsteer/quantifier.hpp"

#include "quantifier_kernels.hpp"

namespace gsteer::serial {

Verdict decide(const QuantifiedCondition& q, const SolverConfig& cfg) {
  return detail::decide_impl<false>(q, cfg);
}

GridSweep grid_sweep(const QuantifiedCondition& q, std::size_t resolution) {
  return detail::grid_sweep_impl<false>(q, resolution);
}

}  // namespace gsteer::serial
