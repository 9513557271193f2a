#include "poolrisk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "expected_utility.hpp"

namespace poolrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

namespace detail {

Estimate expected_utility(const Utility& u, const LatticeDistribution& d, int n, double v,
                          const Engine& e) {
    if (!e.is_mc()) {
        return {expect_fn(d, n, [&u](double x) { return u.value(x); }, v), 0.0};
    }
    // -infinity short-circuits: a sampled pool mean left the utility domain.
    std::vector<double> uvals = sample_means(d, n, e.mc_count, e.mc_seed);
    double sum = 0.0;
    for (double& s : uvals) {
        s = u.value(v + s);
        if (s == -kInf) return {-kInf, 0.0};
        sum += s;
    }
    const double mean = sum / static_cast<double>(uvals.size());
    double ss = 0.0;
    for (double ux : uvals) {
        const double dev = ux - mean;
        ss += dev * dev;
    }
    const double var = ss / static_cast<double>(uvals.size());
    return {mean, std::sqrt(var / static_cast<double>(uvals.size()))};
}

}  // namespace detail

Engine Engine::monte_carlo(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("monte carlo count must be >= 1");
    Engine e;
    e.mode = Mode::monte_carlo;
    e.mc_count = count;
    e.mc_seed = seed;
    return e;
}

Estimate certainty_equivalent_estimate(const Utility& u, const LatticeDistribution& d, int n,
                                       double v, const Engine& e) {
    const Estimate ey = detail::expected_utility(u, d, n, v, e);
    const double ce = u.inverse(ey.value);
    if (!std::isfinite(ce) || ey.std_err == 0.0) return {ce, 0.0};
    // Delta method: se(ce) = se(E[u]) / u'(ce).
    return {ce, ey.std_err / u.derivative(ce, 1)};
}

double certainty_equivalent(const Utility& u, const LatticeDistribution& d, int n, double v,
                            const Engine& e) {
    return certainty_equivalent_estimate(u, d, n, v, e).value;
}

double risk_premium(const Utility& u, const LatticeDistribution& d, int n, double v,
                    const Engine& e) {
    const double ce = certainty_equivalent(u, d, n, v, e);
    if (ce == -kInf) return kInf;
    return v + moments(d).mean - ce;
}

double entropic_risk(const LatticeDistribution& d, double gamma, int n) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("entropic risk needs gamma > 0");
    const LatticeDistribution dn = convolve_power(d, n);
    const double inv_n = 1.0 / static_cast<double>(n);

    // log-sum-exp of -gamma * atoms of S_n/n, so gamma up to 1e6 and
    // supports far from zero stay finite.
    double m = -kInf;
    for (std::size_t k = 0; k < dn.size(); ++k) {
        if (dn.probs()[k] <= 0.0) continue;
        m = std::max(m, -gamma * dn.atom(k) * inv_n);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < dn.size(); ++k) {
        const double p = dn.probs()[k];
        if (p <= 0.0) continue;
        sum += p * std::exp(-gamma * dn.atom(k) * inv_n - m);
    }
    return (m + std::log(sum)) / gamma;
}

double gaussian_entropic_ce(double mu, double sigma, double gamma) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    return mu - gamma * sigma * sigma / 2.0;
}

double pratt_limit(const Utility& u, const LatticeDistribution& d, double v) {
    const MomentSummary m = moments(d);
    return 0.5 * u.absolute_risk_aversion(v + m.mean) * m.variance;
}

double sqrt_n_bound(const LatticeDistribution& d) { return std::sqrt(moments(d).variance); }

}  // namespace poolrisk
