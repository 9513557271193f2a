#pragma once

#include "poolrisk/classical.hpp"

namespace poolrisk::detail {

// E[u(v + S_n/n)] under the given engine, with the Monte Carlo standard
// error of the estimate (zero in exact mode). Shared by the certainty
// equivalent and the penalized robust functionals, which combine the
// utility-level expectation with penalties before inverting.
Estimate expected_utility(const Utility& u, const LatticeDistribution& d, int n, double v,
                          const Engine& e);

}  // namespace poolrisk::detail
