#pragma once

#include <cstdint>

#include "poolrisk/lattice.hpp"
#include "poolrisk/utility.hpp"

namespace poolrisk {

// Evaluation backend. Exact mode enumerates the convolved lattice law;
// Monte Carlo mode averages over seeded sample means.
struct Engine {
    enum class Mode { exact, monte_carlo };

    Mode mode{Mode::exact};
    int mc_count{0};
    std::uint64_t mc_seed{0};

    static Engine exact() { return Engine{}; }
    static Engine monte_carlo(int count, std::uint64_t seed);

    bool is_mc() const { return mode == Mode::monte_carlo; }
};

// Value plus a standard-error estimate (zero in exact mode).
struct Estimate {
    double value;
    double std_err;
};

// Certainty equivalent u^{-1}(E[u(v + S_n/n)]) of the pooled average risk
// for an agent with wealth v; -infinity when the expected utility is.
double certainty_equivalent(const Utility& u, const LatticeDistribution& d, int n,
                            double v, const Engine& e = Engine::exact());

// certainty_equivalent together with the Monte Carlo standard error of the
// estimate (delta method through u^{-1}).
Estimate certainty_equivalent_estimate(const Utility& u, const LatticeDistribution& d,
                                       int n, double v, const Engine& e = Engine::exact());

// v + E[X_1] - certainty_equivalent; nonnegative for concave u, +infinity
// when the certainty equivalent is -infinity.
double risk_premium(const Utility& u, const LatticeDistribution& d, int n,
                    double v, const Engine& e = Engine::exact());

// Entropic risk (1/gamma) log E[exp(-gamma S_n/n)], evaluated in log-sum-exp
// form so that extreme gamma stays finite.
double entropic_risk(const LatticeDistribution& d, double gamma, int n);

// Exponential-utility certainty equivalent of a Gaussian risk: mu - gamma sigma^2 / 2.
// Analytic helper for curves whose law is normal rather than lattice.
double gaussian_entropic_ce(double mu, double sigma, double gamma);

// Limit of n times the risk premium: (1/2) R(v + E[X_1]) Var(X_1), with R
// the Arrow-Pratt coefficient of u.
double pratt_limit(const Utility& u, const LatticeDistribution& d, double v);

// Ceiling for sqrt(n) times the risk premium: the standard deviation of X_1.
double sqrt_n_bound(const LatticeDistribution& d);

}  // namespace poolrisk
