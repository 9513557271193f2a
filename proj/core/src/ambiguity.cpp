#include "poolrisk/ambiguity.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace poolrisk {

namespace {

constexpr double kNormTol = 1e-12;

std::string joined(const std::vector<double>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    return os.str();
}

}  // namespace

AmbiguityModel::AmbiguityModel(std::vector<WeightedModel> models) : models_(std::move(models)) {
    if (models_.empty()) throw std::invalid_argument("ambiguity set must be nonempty");

    double min_alpha = std::numeric_limits<double>::infinity();
    double min_beta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < models_.size(); ++i) {
        const WeightedModel& m = models_[i];
        if (!(m.alpha >= 0.0) || !std::isfinite(m.alpha)) {
            throw std::invalid_argument("models[" + std::to_string(i) +
                                        "].alpha must be finite and >= 0");
        }
        if (!(m.beta >= 1.0 - kNormTol) || !std::isfinite(m.beta)) {
            throw std::invalid_argument("models[" + std::to_string(i) +
                                        "].beta must be finite and >= 1");
        }
        min_alpha = std::min(min_alpha, m.alpha);
        min_beta = std::min(min_beta, m.beta);
    }
    if (min_alpha > kNormTol) {
        std::vector<double> suggested;
        for (const auto& m : models_) suggested.push_back(m.alpha - min_alpha);
        throw std::invalid_argument(
            "alphas are not normalized: min alpha = " + std::to_string(min_alpha) +
            ", expected 0; use alphas {" + joined(suggested) + "}");
    }
    if (std::abs(min_beta - 1.0) > kNormTol) {
        std::vector<double> suggested;
        for (const auto& m : models_) suggested.push_back(m.beta / min_beta);
        throw std::invalid_argument(
            "betas are not normalized: min beta = " + std::to_string(min_beta) +
            ", expected 1; use betas {" + joined(suggested) + "}");
    }

    // One shared grid: equal steps, origins an integer number of steps apart.
    const double step = models_[0].law.step();
    const double origin0 = models_[0].law.origin();
    for (std::size_t i = 1; i < models_.size(); ++i) {
        const LatticeDistribution& law = models_[i].law;
        if (std::abs(law.step() - step) > 1e-12 * step) {
            throw std::invalid_argument("models[" + std::to_string(i) +
                                        "].law has a different lattice step");
        }
        const double r = (law.origin() - origin0) / step;
        if (std::abs(r - std::round(r)) > 1e-9) {
            throw std::invalid_argument("models[" + std::to_string(i) +
                                        "].law origin is not aligned to the shared grid");
        }
    }
}

RobustValue robust_expectation(const AmbiguityModel& a, double v) {
    RobustValue best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double candidate = v + moments(a[i].law).mean + a[i].alpha;
        if (candidate < best.value) best = {candidate, i};
    }
    return best;
}

RobustValue robust_certainty_equivalent(const AmbiguityModel& a, const Utility& u, int n,
                                        double v, const Engine& e) {
    RobustValue best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Estimate ce = certainty_equivalent_estimate(u, a[i].law, n, v, e);
        const double candidate = ce.value + a[i].alpha;
        if (candidate < best.value) best = {candidate, i, ce.std_err};
    }
    return best;
}

RobustValue entropy_coherent_risk(const AmbiguityModel& a, double gamma, int n) {
    RobustValue best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double candidate = entropic_risk(a[i].law, gamma, n);
        if (candidate > best.value) best = {candidate, i};
    }
    return best;
}

RobustValue entropy_convex_risk(const AmbiguityModel& a, double gamma, int n) {
    RobustValue best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double candidate = entropic_risk(a[i].law, gamma, n) - a[i].alpha;
        if (candidate > best.value) best = {candidate, i};
    }
    return best;
}

RateBounds robust_rate_bounds(const AmbiguityModel& a, const Utility& u, double v) {
    double upper = 0.0;
    std::vector<double> per_model(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const MomentSummary m = moments(a[i].law);
        per_model[i] = 0.5 * u.absolute_risk_aversion(v + m.mean) * m.variance;
        upper = std::max(upper, per_model[i]);
    }
    const std::size_t q = robust_expectation(a, v).index;
    return {per_model[q], upper};
}

}  // namespace poolrisk
