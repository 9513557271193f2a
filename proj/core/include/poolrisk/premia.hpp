#pragma once

#include "poolrisk/ambiguity.hpp"

namespace poolrisk {

// Robust functionals with multiplicative penalties (homothetic criterion)
// and additive penalties (variational criterion), and the associated risk
// premia of the pooled average risk.
//
// Homothetic: W(X) = min_Q E_Q[X] beta(Q) and
//             W_P(X) = u^{-1}(min_Q E_Q[u(X)] beta(Q)); premium W - W_P.
// Variational: C(X) = min_Q E_Q[u(X)] + alpha(Q), V_P = u^{-1}(C) and
//              V(X) = u^{-1}(min_Q u(E_Q[X]) + alpha(Q));
//              premium v + min_Q(E_Q[X_1] + alpha(Q)) - V_P(v + S_n/n).
//
// The homothetic premium vanishes as the pool grows; the variational
// premium converges to the generally nonzero (and possibly negative)
// difference between the worst-case expectation and V.

RobustValue homothetic_expectation(const AmbiguityModel& a, double v);

// beta multiplies utility-level expectations, which are negative for the
// exponential family at low wealth; that is permitted and simply weights
// the pessimistic branch more.
RobustValue homothetic_certainty_equivalent(const AmbiguityModel& a, const Utility& u,
                                            int n, double v,
                                            const Engine& e = Engine::exact());

double homothetic_premium(const AmbiguityModel& a, const Utility& u, int n, double v,
                          const Engine& e = Engine::exact());

// Bounds for n times the homothetic premium:
// upper = (1/2) max_Q R(E_Q[v+X_1] beta(Q)) Var_Q(X_1) beta(Q), lower the
// same expression at the model attaining homothetic_expectation.
RateBounds homothetic_rate_bounds(const AmbiguityModel& a, const Utility& u, double v);

RobustValue variational_certainty_equivalent(const AmbiguityModel& a, const Utility& u,
                                             int n, double v,
                                             const Engine& e = Engine::exact());

// Large-pool limit of the variational certainty equivalent.
RobustValue variational_limit(const AmbiguityModel& a, const Utility& u, double v);

double variational_premium(const AmbiguityModel& a, const Utility& u, int n, double v,
                           const Engine& e = Engine::exact());

// Only the lower bound of n times the variational gap has a closed form:
//   [-u''(E_Q*[v+X_1]) / u'(u^{-1}(u(E_Q*[v+X_1]) + alpha(Q*)))] Var_Q*(X_1) / 2
// with Q* the model attaining variational_limit. A finite upper constant
// exists for finite ambiguity sets but has no formula; convergence reports
// surface the empirical ceiling of n * gap over the computed grid instead.
struct VariationalRateBounds {
    double lower;
    bool upper_exists{true};
};

VariationalRateBounds variational_rate_bounds(const AmbiguityModel& a, const Utility& u,
                                              double v);

}  // namespace poolrisk
