#pragma once

#include <string>

namespace poolrisk {

enum class UtilityFamily { exponential, power, logarithmic, linear };

// Parametric utility u, strictly increasing and concave on its domain,
// with closed-form derivatives up to third order and closed-form inverse.
// Families:
//   exponential(gamma) : u(x) = 1 - exp(-gamma x),            gamma > 0
//   power(chi)         : u(x) = (x^(1-chi) - 1) / (1 - chi),  chi > 0, chi != 1
//   logarithmic        : u(x) = log x
//   linear             : u(x) = x
// Power and log take the value -infinity for x <= 0.
class Utility {
public:
    static Utility exponential(double gamma);
    static Utility power(double chi);
    static Utility logarithmic();
    static Utility linear();

    UtilityFamily family() const { return family_; }
    double param() const { return param_; }

    // u(x); -infinity outside the domain.
    double value(double x) const;

    // Closed-form derivative of order 1, 2 or 3 at an interior point of
    // the domain.
    double derivative(double x, int order) const;

    // u^{-1}(y) for y in the image of u, extended by inverse(-inf) = -inf.
    // For the exponential family values y >= 1 - 1e-15 are rejected rather
    // than mapped to huge wealth levels.
    double inverse(double y) const;

    // Arrow-Pratt coefficient -u''(x)/u'(x).
    double absolute_risk_aversion(double x) const;

    // Infimum of the domain: -infinity, or 0 for power/log.
    double domain_lower() const;
    // Supremum of the image: 1 for exponential, 1/(chi-1) for power with
    // chi > 1, +infinity otherwise.
    double image_upper() const;

private:
    Utility(UtilityFamily family, double param) : family_(family), param_(param) {}

    UtilityFamily family_;
    double param_;
};

// Parses "exp:gamma=<float>", "power:chi=<float>", "log" or "linear".
Utility parse_utility_spec(const std::string& spec);

// Inverse of parse_utility_spec, for diagnostics and echoing configs.
std::string to_spec_string(const Utility& u);

}  // namespace poolrisk
