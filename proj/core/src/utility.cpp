#include "poolrisk/utility.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace poolrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_interior(const Utility& u, double x, const char* what) {
    if (!std::isfinite(x) || x <= u.domain_lower()) {
        throw std::domain_error(std::string(what) + ": x outside the interior of the domain of " +
                                to_spec_string(u));
    }
}

}  // namespace

Utility Utility::exponential(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("exponential utility needs gamma > 0");
    return Utility(UtilityFamily::exponential, gamma);
}

Utility Utility::power(double chi) {
    if (!(chi > 0.0) || chi == 1.0 || !std::isfinite(chi))
        throw std::invalid_argument("power utility needs chi > 0, chi != 1");
    return Utility(UtilityFamily::power, chi);
}

Utility Utility::logarithmic() { return Utility(UtilityFamily::logarithmic, 0.0); }

Utility Utility::linear() { return Utility(UtilityFamily::linear, 0.0); }

double Utility::value(double x) const {
    switch (family_) {
        case UtilityFamily::exponential:
            return 1.0 - std::exp(-param_ * x);
        case UtilityFamily::power:
            if (x <= 0.0) return -kInf;
            return (std::pow(x, 1.0 - param_) - 1.0) / (1.0 - param_);
        case UtilityFamily::logarithmic:
            if (x <= 0.0) return -kInf;
            return std::log(x);
        case UtilityFamily::linear:
            return x;
    }
    throw std::logic_error("unreachable utility family");
}

double Utility::derivative(double x, int order) const {
    if (order < 1 || order > 3)
        throw std::invalid_argument("derivative order must be 1, 2 or 3");
    require_interior(*this, x, "derivative");
    switch (family_) {
        case UtilityFamily::exponential: {
            const double g = param_;
            const double e = std::exp(-g * x);
            if (order == 1) return g * e;
            if (order == 2) return -g * g * e;
            return g * g * g * e;
        }
        case UtilityFamily::power: {
            const double chi = param_;
            if (order == 1) return std::pow(x, -chi);
            if (order == 2) return -chi * std::pow(x, -chi - 1.0);
            return chi * (chi + 1.0) * std::pow(x, -chi - 2.0);
        }
        case UtilityFamily::logarithmic:
            if (order == 1) return 1.0 / x;
            if (order == 2) return -1.0 / (x * x);
            return 2.0 / (x * x * x);
        case UtilityFamily::linear:
            return order == 1 ? 1.0 : 0.0;
    }
    throw std::logic_error("unreachable utility family");
}

double Utility::inverse(double y) const {
    if (y == -kInf) return -kInf;  // formal extension shared by all families
    switch (family_) {
        case UtilityFamily::exponential:
            // Reject near the image boundary instead of returning huge
            // wealth levels that would masquerade as convergence.
            if (y >= 1.0 - 1e-15)
                throw std::domain_error("inverse: y outside the image of " + to_spec_string(*this));
            return -std::log1p(-y) / param_;
        case UtilityFamily::power: {
            const double t = 1.0 + (1.0 - param_) * y;
            if (t <= 0.0)
                throw std::domain_error("inverse: y outside the image of " + to_spec_string(*this));
            return std::pow(t, 1.0 / (1.0 - param_));
        }
        case UtilityFamily::logarithmic:
            return std::exp(y);
        case UtilityFamily::linear:
            return y;
    }
    throw std::logic_error("unreachable utility family");
}

double Utility::absolute_risk_aversion(double x) const {
    require_interior(*this, x, "absolute_risk_aversion");
    switch (family_) {
        case UtilityFamily::exponential:
            return param_;
        case UtilityFamily::power:
            return param_ / x;
        case UtilityFamily::logarithmic:
            return 1.0 / x;
        case UtilityFamily::linear:
            return 0.0;
    }
    throw std::logic_error("unreachable utility family");
}

double Utility::domain_lower() const {
    return (family_ == UtilityFamily::power || family_ == UtilityFamily::logarithmic) ? 0.0
                                                                                      : -kInf;
}

double Utility::image_upper() const {
    if (family_ == UtilityFamily::exponential) return 1.0;
    if (family_ == UtilityFamily::power && param_ > 1.0) return 1.0 / (param_ - 1.0);
    return kInf;
}

Utility parse_utility_spec(const std::string& spec) {
    if (spec == "log") return Utility::logarithmic();
    if (spec == "linear") return Utility::linear();

    const auto parse_param = [&spec](const std::string& prefix) {
        const std::string rest = spec.substr(prefix.size());
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(rest, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad utility spec '" + spec + "'");
        }
        if (used != rest.size())
            throw std::invalid_argument("bad utility spec '" + spec + "'");
        return value;
    };

    if (spec.rfind("exp:gamma=", 0) == 0) return Utility::exponential(parse_param("exp:gamma="));
    if (spec.rfind("power:chi=", 0) == 0) return Utility::power(parse_param("power:chi="));
    throw std::invalid_argument("bad utility spec '" + spec +
                                "' (expected exp:gamma=<v>, power:chi=<v>, log or linear)");
}

std::string to_spec_string(const Utility& u) {
    std::ostringstream os;
    switch (u.family()) {
        case UtilityFamily::exponential:
            os << "exp:gamma=" << u.param();
            break;
        case UtilityFamily::power:
            os << "power:chi=" << u.param();
            break;
        case UtilityFamily::logarithmic:
            os << "log";
            break;
        case UtilityFamily::linear:
            os << "linear";
            break;
    }
    return os.str();
}

}  // namespace poolrisk
