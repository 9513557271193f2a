#pragma once

#include <cstddef>
#include <vector>

#include "poolrisk/classical.hpp"
#include "poolrisk/lattice.hpp"
#include "poolrisk/utility.hpp"

namespace poolrisk {

// One candidate law with its additive penalty (alpha, used by worst-case
// expectations and variational functionals) and multiplicative penalty
// (beta, used by homothetic functionals). The two penalties live in the
// units they are applied in and are never mixed inside one functional.
struct WeightedModel {
    LatticeDistribution law;
    double alpha{0.0};
    double beta{1.0};
};

// Finite ambiguity set. Construction enforces the normalizations
// min alpha = 0 and min beta = 1 (rejecting with the normalized values
// suggested), alpha >= 0, beta >= 1 and finite, and that all laws share
// one lattice grid (equal steps, origins an integer number of steps
// apart). Every worst case over the set is therefore attained.
class AmbiguityModel {
public:
    explicit AmbiguityModel(std::vector<WeightedModel> models);

    const std::vector<WeightedModel>& models() const { return models_; }
    std::size_t size() const { return models_.size(); }
    const WeightedModel& operator[](std::size_t i) const { return models_[i]; }

private:
    std::vector<WeightedModel> models_;
};

// Optimal value over the ambiguity set together with the index of the
// model attaining it (lowest index on ties) and the Monte Carlo standard
// error of the attaining branch (zero in exact mode).
struct RobustValue {
    double value;
    std::size_t index;
    double std_err{0.0};
};

struct RateBounds {
    double lower;
    double upper;
};

// Worst-case expectation min_Q E_Q[v + X_1] + alpha(Q).
RobustValue robust_expectation(const AmbiguityModel& a, double v);

// Worst-case certainty equivalent min_Q u^{-1}(E_Q[u(v + S_n/n)]) + alpha(Q).
RobustValue robust_certainty_equivalent(const AmbiguityModel& a, const Utility& u,
                                        int n, double v,
                                        const Engine& e = Engine::exact());

// Worst-case entropic risk max_Q (1/gamma) log E_Q[exp(-gamma S_n/n)];
// penalties ignored.
RobustValue entropy_coherent_risk(const AmbiguityModel& a, double gamma, int n);

// max_Q { entropic risk under Q - alpha(Q) }.
RobustValue entropy_convex_risk(const AmbiguityModel& a, double gamma, int n);

// Asymptotic bounds for n times the robust certainty-equivalent gap:
// upper = (1/2) max_Q R(E_Q[v+X_1]) Var_Q(X_1), lower the same expression
// at the model attaining the worst-case expectation.
RateBounds robust_rate_bounds(const AmbiguityModel& a, const Utility& u, double v);

}  // namespace poolrisk
