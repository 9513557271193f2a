#include "poolrisk/premia.hpp"

#include <cmath>
#include <limits>

#include "expected_utility.hpp"

namespace poolrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RobustValue homothetic_expectation(const AmbiguityModel& a, double v) {
    RobustValue best{kInf, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double candidate = (v + moments(a[i].law).mean) * a[i].beta;
        if (candidate < best.value) best = {candidate, i};
    }
    return best;
}

RobustValue homothetic_certainty_equivalent(const AmbiguityModel& a, const Utility& u, int n,
                                            double v, const Engine& e) {
    double best = kInf;
    std::size_t best_index = 0;
    double best_se = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Estimate ey = detail::expected_utility(u, a[i].law, n, v, e);
        const double candidate = ey.value * a[i].beta;  // -inf stays -inf, beta >= 1
        if (candidate < best) {
            best = candidate;
            best_index = i;
            best_se = ey.std_err * a[i].beta;
        }
    }
    const double ce = u.inverse(best);
    if (!std::isfinite(ce) || best_se == 0.0) return {ce, best_index, 0.0};
    return {ce, best_index, best_se / u.derivative(ce, 1)};
}

double homothetic_premium(const AmbiguityModel& a, const Utility& u, int n, double v,
                          const Engine& e) {
    const double ce = homothetic_certainty_equivalent(a, u, n, v, e).value;
    if (ce == -kInf) return kInf;
    return homothetic_expectation(a, v).value - ce;
}

RateBounds homothetic_rate_bounds(const AmbiguityModel& a, const Utility& u, double v) {
    double upper = 0.0;
    std::vector<double> per_model(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const MomentSummary m = moments(a[i].law);
        const double scaled_mean = (v + m.mean) * a[i].beta;
        per_model[i] =
            0.5 * u.absolute_risk_aversion(scaled_mean) * m.variance * a[i].beta;
        upper = std::max(upper, per_model[i]);
    }
    const std::size_t q = homothetic_expectation(a, v).index;
    return {per_model[q], upper};
}

RobustValue variational_certainty_equivalent(const AmbiguityModel& a, const Utility& u, int n,
                                             double v, const Engine& e) {
    double best = kInf;
    std::size_t best_index = 0;
    double best_se = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Estimate ey = detail::expected_utility(u, a[i].law, n, v, e);
        const double candidate = ey.value + a[i].alpha;
        if (candidate < best) {
            best = candidate;
            best_index = i;
            best_se = ey.std_err;
        }
    }
    const double ce = u.inverse(best);
    if (!std::isfinite(ce) || best_se == 0.0) return {ce, best_index, 0.0};
    return {ce, best_index, best_se / u.derivative(ce, 1)};
}

RobustValue variational_limit(const AmbiguityModel& a, const Utility& u, double v) {
    double best = kInf;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double candidate = u.value(v + moments(a[i].law).mean) + a[i].alpha;
        if (candidate < best) {
            best = candidate;
            best_index = i;
        }
    }
    return {u.inverse(best), best_index};
}

double variational_premium(const AmbiguityModel& a, const Utility& u, int n, double v,
                           const Engine& e) {
    const double ce = variational_certainty_equivalent(a, u, n, v, e).value;
    if (ce == -kInf) return kInf;
    return v + robust_expectation(a, 0.0).value - ce;
}

VariationalRateBounds variational_rate_bounds(const AmbiguityModel& a, const Utility& u,
                                              double v) {
    const std::size_t q = variational_limit(a, u, v).index;
    const MomentSummary m = moments(a[q].law);
    const double x = v + m.mean;
    const double numerator = -u.derivative(x, 2);
    const double denominator = u.derivative(u.inverse(u.value(x) + a[q].alpha), 1);
    return {numerator / denominator * m.variance / 2.0, true};
}

}  // namespace poolrisk
