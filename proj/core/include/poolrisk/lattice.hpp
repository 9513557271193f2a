#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace poolrisk {

// Law of a single risk on an arithmetic grid: atom k carries probability
// probs()[k] and sits at origin() + k * step(). Construction validates
// (probabilities nonnegative, summing to one within 1e-12, step positive)
// and trims zero-probability ends, so the first and last atom are always
// part of the support.
class LatticeDistribution {
public:
    LatticeDistribution(double origin, double step, std::vector<double> probs);

    double origin() const { return origin_; }
    double step() const { return step_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

    // Grid point of atom k.
    double atom(std::size_t k) const { return origin_ + static_cast<double>(k) * step_; }

    static LatticeDistribution point_mass(double c);

private:
    double origin_;
    double step_;
    std::vector<double> probs_;
};

struct MomentSummary {
    double mean;
    double variance;
    double fourth_central;
    double essential_min;  // smallest atom with positive probability
    double essential_max;  // largest atom with positive probability
};

// Process-wide ceiling on the support size produced by convolve_power.
// Exceeding it raises std::length_error naming the cap.
inline constexpr std::size_t kDefaultSupportCap = std::size_t{1} << 20;
std::size_t support_cap();
void set_support_cap(std::size_t cap);

MomentSummary moments(const LatticeDistribution& d);

// Pairwise-convolution backend inside convolve_power. The automatic
// policy convolves small operands directly (keeping full relative
// precision on far-tail weights, which heavily tilted entropic sums
// rely on) and switches to FFT once the direct product grows past
// ~16M multiply-adds; the explicit values force one backend.
enum class ConvolutionMethod { automatic, direct, fft };

// Exact law of the n-fold i.i.d. sum: origin n*d.origin(), same step,
// coefficients the n-fold self-convolution of d.probs(), built from
// pairwise products combined by repeated squaring. Every product is
// clipped (values in [-1e-14, 0) become 0, anything below is a hard
// error) and renormalized.
LatticeDistribution convolve_power(const LatticeDistribution& d, int n,
                                   ConvolutionMethod method = ConvolutionMethod::automatic);

// E[f(shift + S_n/n)] over the exact law of the i.i.d. sum S_n.
// Returns -infinity as soon as a positive-probability atom maps to
// -infinity (utility evaluated outside its domain).
double expect_fn(const LatticeDistribution& d, int n,
                 const std::function<double(double)>& f, double shift);

// `count` independent realizations of S_n/n. Deterministic given the
// seed; replication r draws from its own RNG stream, so evaluations at
// different n reuse the same underlying variates (common random numbers
// across an n-grid).
std::vector<double> sample_means(const LatticeDistribution& d, int n, int count,
                                 std::uint64_t seed);

// Relative entropy sum_x q(x) log(q(x)/p(x)). Requires both laws on one
// grid (equal steps, origins an integer number of steps apart);
// +infinity when q charges an atom that p does not.
double kl_divergence(const LatticeDistribution& q, const LatticeDistribution& p);

}  // namespace poolrisk
