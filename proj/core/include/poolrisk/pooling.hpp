#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poolrisk/utility.hpp"

namespace poolrisk {

// Small explicit probability space for brute-force allocation checks.
// Each ambiguity model contributes one weight row over the atoms; the
// endowment is the aggregate payoff per atom.
class SampleSpace {
public:
    SampleSpace(std::vector<std::string> atoms,
                std::vector<std::vector<double>> model_weights,
                std::vector<double> endowment);

    std::size_t n_atoms() const { return endowment_.size(); }
    std::size_t n_models() const { return model_weights_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<std::vector<double>>& model_weights() const { return model_weights_; }
    const std::vector<double>& endowment() const { return endowment_; }

private:
    std::vector<std::string> atoms_;
    std::vector<std::vector<double>> model_weights_;
    std::vector<double> endowment_;
};

// Full division of the endowment: shares[agent][atom], columns summing to
// the endowment atom-wise (within 1e-10).
struct Allocation {
    std::vector<std::vector<double>> shares;
};

enum class CriterionKind { expected_utility, robust_ce, homothetic, variational };

// Welfare criterion evaluated per agent share. expected_utility scores
// E[u(Y)] under the first weight row; the robust kinds take worst cases
// over all rows, with per-model penalties (missing entries default to
// alpha 0, beta 1).
struct PoolCriterion {
    CriterionKind kind;
    Utility u;
    std::vector<double> alphas{};
    std::vector<double> betas{};
};

// Criterion value of one share vector (payoff per atom).
double criterion_value(const SampleSpace& s, const PoolCriterion& c,
                       const std::vector<double>& share);

// Every agent receives endowment/n atom-wise.
Allocation proportional_allocation(const SampleSpace& s, int n);

// n * criterion(W/n) - sum_i criterion(Y_i): the welfare sacrificed by an
// allocation relative to the proportional rule. Zero for the proportional
// allocation itself, +infinity when some share leaves the utility domain
// on a charged atom.
double pareto_gap(const SampleSpace& s, const PoolCriterion& c, const Allocation& a);

struct ParetoSearchResult {
    double min_gap;
    Allocation worst_allocation;
};

// Randomized falsification: samples `trials` full allocations (random
// convex shares per atom; for unbounded-domain utilities every other
// trial additionally applies a zero-sum cash transfer) and returns the
// smallest observed gap. Deterministic given the seed.
ParetoSearchResult pareto_search(const SampleSpace& s, const PoolCriterion& c, int n,
                                 int trials, std::uint64_t seed);

}  // namespace poolrisk
