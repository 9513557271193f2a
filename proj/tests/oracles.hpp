#pragma once

// Test-only oracles and case generators. The convolution oracle is a
// direct dynamic program, independent of the FFT path it checks.

#include <cmath>
#include <random>
#include <vector>

#include "poolrisk/lattice.hpp"
#include "poolrisk/utility.hpp"

namespace oracle {

inline std::vector<double> convolve_direct(const std::vector<double>& a,
                                           const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<double> convolve_power_direct(const std::vector<double>& probs, int n) {
    std::vector<double> acc{1.0};
    for (int i = 0; i < n; ++i) acc = convolve_direct(acc, probs);
    return acc;
}

// Largest per-atom deviation between a convolve_power result and the
// direct dynamic program, aligned by grid position (the library trims
// ends whose weight degenerates to zero).
inline double max_abs_vs_direct(const poolrisk::LatticeDistribution& d, int n,
                                const poolrisk::LatticeDistribution& got) {
    const std::vector<double> want = convolve_power_direct(d.probs(), n);
    const double offset_real = (got.origin() - n * d.origin()) / d.step();
    const long long offset = std::llround(offset_real);
    double worst = std::abs(offset_real - static_cast<double>(offset));
    for (std::size_t k = 0; k < want.size(); ++k) {
        const long long j = static_cast<long long>(k) - offset;
        const double got_p = (j >= 0 && j < static_cast<long long>(got.size()))
                                 ? got.probs()[static_cast<std::size_t>(j)]
                                 : 0.0;
        worst = std::max(worst, std::abs(got_p - want[k]));
    }
    return worst;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

// Random lattice law with 2..5 atoms. positive_support pushes the whole
// grid above 0.1 so bounded-domain utilities stay finite.
inline poolrisk::LatticeDistribution random_law(std::mt19937_64& rng, bool positive_support) {
    const int len = 2 + static_cast<int>(rng() % 4);
    const double step = uniform(rng, 0.1, 0.6);
    const double origin = positive_support ? uniform(rng, 0.1, 1.0) : uniform(rng, -1.0, 0.0);
    std::vector<double> probs(static_cast<std::size_t>(len));
    double total = 0.0;
    for (double& p : probs) {
        p = 0.05 - std::log1p(-uniform(rng, 0.0, 1.0));
        total += p;
    }
    for (double& p : probs) p /= total;
    // Nudge the sum onto 1 exactly so the 1e-12 constructor gate never
    // trips on generator round-off.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) sum += probs[i];
    probs.back() = 1.0 - sum;
    return poolrisk::LatticeDistribution(origin, step, probs);
}

// Random utility cycling through the four families with parameters that
// keep Arrow-Pratt coefficients moderate on the generated laws.
inline poolrisk::Utility random_utility(std::mt19937_64& rng, int which) {
    switch (which % 4) {
        case 0: return poolrisk::Utility::exponential(uniform(rng, 0.25, 3.0));
        case 1: {
            double chi = uniform(rng, 0.3, 2.5);
            if (std::abs(chi - 1.0) < 0.05) chi += 0.1;
            return poolrisk::Utility::power(chi);
        }
        case 2: return poolrisk::Utility::logarithmic();
        default: return poolrisk::Utility::linear();
    }
}

struct RandomCase {
    poolrisk::Utility u;
    poolrisk::LatticeDistribution law;
    double wealth;
};

inline RandomCase random_case(std::mt19937_64& rng, int which) {
    const poolrisk::Utility u = random_utility(rng, which);
    const bool bounded = u.domain_lower() > -1e300;
    return RandomCase{u, random_law(rng, bounded),
                      bounded ? uniform(rng, 0.8, 1.8) : uniform(rng, 0.0, 2.0)};
}

}  // namespace oracle
