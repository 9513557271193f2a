#include "poolrisk/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace poolrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbSumTol = 1e-12;
constexpr double kClipFloor = -1e-14;

std::atomic<std::size_t> g_support_cap{kDefaultSupportCap};

// Compensated (Kahan) sum; the convolved supports reach ~10^5 atoms and
// plain accumulation would eat into the 1e-10 contracts.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double get() const { return s_; }

private:
    double s_{0.0};
    double c_{0.0};
};

// Iterative radix-2 FFT with a directly indexed twiddle table (no
// accumulated rotation drift, which matters for the -1e-14 clip floor).
void fft(std::vector<std::complex<double>>& a, bool invert) {
    const std::size_t n = a.size();
    if (n <= 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    std::vector<std::complex<double>> twiddle(n / 2);
    const double base = (invert ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = std::polar(1.0, base * static_cast<double>(k));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = twiddle[k * stride];
                const std::complex<double> u = a[i + k];
                const std::complex<double> t = w * a[i + k + len / 2];
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
            }
        }
    }
    if (invert) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Clip FFT round-off: tiny negatives become 0, anything below the floor
// is treated as a genuine numeric failure. Renormalizes to total mass 1.
void clip_and_renormalize(std::vector<double>& probs) {
    for (double& p : probs) {
        if (p < 0.0) {
            if (p < kClipFloor) {
                throw std::runtime_error(
                    "convolution produced probability " + std::to_string(p) +
                    " below the clip floor -1e-14");
            }
            p = 0.0;
        }
    }
    KahanSum total;
    for (double p : probs) total.add(p);
    const double sum = total.get();
    if (!(sum > 0.0))
        throw std::runtime_error("convolution produced zero total mass");
    for (double& p : probs) p /= sum;
}

// Direct product sizes up to this many multiply-adds stay exact in
// relative terms and are still cheap; beyond it FFT wins.
constexpr std::size_t kDirectConvOpsLimit = std::size_t{1} << 24;

std::vector<double> convolve_pair(const std::vector<double>& a, const std::vector<double>& b,
                                  ConvolutionMethod method) {
    // Scalar operands need no transform.
    if (a.size() == 1) {
        std::vector<double> r = b;
        for (double& x : r) x *= a[0];
        clip_and_renormalize(r);
        return r;
    }
    if (b.size() == 1) return convolve_pair(b, a, method);

    const std::size_t out_len = a.size() + b.size() - 1;
    const bool direct = method == ConvolutionMethod::direct ||
                        (method == ConvolutionMethod::automatic &&
                         a.size() * b.size() <= kDirectConvOpsLimit);

    std::vector<double> r(out_len, 0.0);
    if (direct) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double ai = a[i];
            if (ai == 0.0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += ai * b[j];
        }
    } else {
        const std::size_t m = next_pow2(out_len);
        std::vector<std::complex<double>> fa(m), fb(m);
        std::copy(a.begin(), a.end(), fa.begin());
        fft(fa, false);
        if (a.data() == b.data() && a.size() == b.size()) {
            fb = fa;
        } else {
            std::copy(b.begin(), b.end(), fb.begin());
            fft(fb, false);
        }
        for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
        fft(fa, true);
        for (std::size_t i = 0; i < out_len; ++i) r[i] = fa[i].real();
    }
    clip_and_renormalize(r);
    return r;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

LatticeDistribution::LatticeDistribution(double origin, double step, std::vector<double> probs)
    : origin_(origin), step_(step), probs_(std::move(probs)) {
    if (!std::isfinite(origin_)) throw std::invalid_argument("lattice origin must be finite");
    if (!(step_ > 0.0) || !std::isfinite(step_))
        throw std::invalid_argument("lattice step must be positive and finite");
    if (probs_.empty()) throw std::invalid_argument("lattice needs at least one probability");

    KahanSum total;
    bool any_positive = false;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
        const double p = probs_[k];
        if (!(p >= 0.0)) {
            throw std::invalid_argument("probability at index " + std::to_string(k) +
                                        " is negative (" + format_double(p) + ")");
        }
        if (p > 0.0) any_positive = true;
        total.add(p);
    }
    if (!any_positive) throw std::invalid_argument("lattice carries no positive probability");
    const double sum = total.get();
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw std::invalid_argument("probabilities sum to " + format_double(sum) +
                                    ", expected 1 within 1e-12");
    }

    // Canonical form: trim zero-probability ends.
    std::size_t lo = 0;
    while (probs_[lo] == 0.0) ++lo;
    std::size_t hi = probs_.size();
    while (probs_[hi - 1] == 0.0) --hi;
    if (lo > 0 || hi < probs_.size()) {
        probs_ = std::vector<double>(probs_.begin() + static_cast<std::ptrdiff_t>(lo),
                                     probs_.begin() + static_cast<std::ptrdiff_t>(hi));
        origin_ += static_cast<double>(lo) * step_;
    }
}

LatticeDistribution LatticeDistribution::point_mass(double c) {
    return LatticeDistribution(c, 1.0, {1.0});
}

std::size_t support_cap() { return g_support_cap.load(std::memory_order_relaxed); }

void set_support_cap(std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("support cap must be positive");
    g_support_cap.store(cap, std::memory_order_relaxed);
}

MomentSummary moments(const LatticeDistribution& d) {
    KahanSum mean_sum;
    for (std::size_t k = 0; k < d.size(); ++k) mean_sum.add(d.probs()[k] * d.atom(k));
    const double mean = mean_sum.get();

    KahanSum var_sum, fourth_sum;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double dev = d.atom(k) - mean;
        const double dev2 = dev * dev;
        var_sum.add(d.probs()[k] * dev2);
        fourth_sum.add(d.probs()[k] * dev2 * dev2);
    }

    // Ends are positive by canonical form.
    return MomentSummary{mean, var_sum.get(), fourth_sum.get(), d.atom(0), d.atom(d.size() - 1)};
}

LatticeDistribution convolve_power(const LatticeDistribution& d, int n,
                                   ConvolutionMethod method) {
    if (n < 1) throw std::invalid_argument("pool size n must be >= 1");

    const std::size_t cap = support_cap();
    const std::size_t out_len =
        static_cast<std::size_t>(n) * (d.size() - 1) + 1;
    if (d.size() > 1 && out_len > cap) {
        throw std::length_error("convolution support " + std::to_string(out_len) +
                                " exceeds the support cap " + std::to_string(cap));
    }

    const double origin_n = static_cast<double>(n) * d.origin();
    if (d.size() == 1) return LatticeDistribution(origin_n, d.step(), {1.0});
    if (n == 1) return d;

    // Repeated squaring: log2(n) squarings plus one multiply per set bit.
    std::vector<double> result;
    std::vector<double> base = d.probs();
    int m = n;
    while (m > 0) {
        if (m & 1) result = result.empty() ? base : convolve_pair(result, base, method);
        m >>= 1;
        if (m > 0) base = convolve_pair(base, base, method);
    }
    return LatticeDistribution(origin_n, d.step(), std::move(result));
}

double expect_fn(const LatticeDistribution& d, int n,
                 const std::function<double(double)>& f, double shift) {
    const LatticeDistribution dn = convolve_power(d, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    KahanSum sum;
    for (std::size_t k = 0; k < dn.size(); ++k) {
        const double p = dn.probs()[k];
        if (p <= 0.0) continue;
        const double fx = f(shift + dn.atom(k) * inv_n);
        if (fx == -kInf) return -kInf;
        sum.add(p * fx);
    }
    return sum.get();
}

std::vector<double> sample_means(const LatticeDistribution& d, int n, int count,
                                 std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("pool size n must be >= 1");
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");

    // Inverse-CDF table over the charged atoms, last entry pinned to 1.
    std::vector<double> xs, cum;
    xs.reserve(d.size());
    cum.reserve(d.size());
    KahanSum running;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d.probs()[k] <= 0.0) continue;
        running.add(d.probs()[k]);
        xs.push_back(d.atom(k));
        cum.push_back(running.get());
    }
    cum.back() = 1.0;

    std::vector<double> out(static_cast<std::size_t>(count));
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int r = 0; r < count; ++r) {
        std::mt19937_64 rng(detail::stream_seed(seed, static_cast<std::uint64_t>(r)));
        KahanSum acc;
        for (int i = 0; i < n; ++i) {
            const double u = detail::uniform01(rng);
            const std::size_t idx = static_cast<std::size_t>(
                std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
            acc.add(xs[idx]);
        }
        out[static_cast<std::size_t>(r)] = acc.get() * inv_n;
    }
    return out;
}

double kl_divergence(const LatticeDistribution& q, const LatticeDistribution& p) {
    const double step = p.step();
    if (std::abs(q.step() - step) > 1e-12 * step)
        throw std::invalid_argument("kl_divergence: lattice steps differ");
    const double offset_real = (q.origin() - p.origin()) / step;
    const double offset_rounded = std::round(offset_real);
    if (std::abs(offset_real - offset_rounded) > 1e-9)
        throw std::invalid_argument("kl_divergence: lattice origins are not grid-aligned");
    const long long offset = static_cast<long long>(offset_rounded);

    KahanSum sum;
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double qk = q.probs()[k];
        if (qk <= 0.0) continue;
        const long long j = offset + static_cast<long long>(k);
        if (j < 0 || j >= static_cast<long long>(p.size())) return kInf;
        const double pj = p.probs()[static_cast<std::size_t>(j)];
        if (pj <= 0.0) return kInf;
        sum.add(qk * std::log(qk / pj));
    }
    return sum.get();
}

}  // namespace poolrisk
