#include "poolrisk/pooling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rng.hpp"

namespace poolrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double penalty_at(const std::vector<double>& xs, std::size_t i, double fallback) {
    return i < xs.size() ? xs[i] : fallback;
}

// E[u(share)] under one weight row; zero-weight atoms are not charged and
// may violate the domain freely.
double expected_u(const std::vector<double>& w, const std::vector<double>& share,
                  const Utility& u) {
    double sum = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) {
        if (w[a] <= 0.0) continue;
        const double ux = u.value(share[a]);
        if (ux == -kInf) return -kInf;
        sum += w[a] * ux;
    }
    return sum;
}

void validate_allocation(const SampleSpace& s, const Allocation& a) {
    if (a.shares.empty()) throw std::invalid_argument("allocation needs at least one agent");
    for (const auto& row : a.shares) {
        if (row.size() != s.n_atoms())
            throw std::invalid_argument("allocation row length does not match the atom count");
    }
    for (std::size_t atom = 0; atom < s.n_atoms(); ++atom) {
        double col = 0.0;
        for (const auto& row : a.shares) col += row[atom];
        if (std::abs(col - s.endowment()[atom]) > 1e-10) {
            throw std::invalid_argument("allocation does not sum to the endowment at atom " +
                                        std::to_string(atom));
        }
    }
}

}  // namespace

SampleSpace::SampleSpace(std::vector<std::string> atoms,
                         std::vector<std::vector<double>> model_weights,
                         std::vector<double> endowment)
    : atoms_(std::move(atoms)),
      model_weights_(std::move(model_weights)),
      endowment_(std::move(endowment)) {
    if (endowment_.empty()) throw std::invalid_argument("sample space needs at least one atom");
    if (model_weights_.empty())
        throw std::invalid_argument("sample space needs at least one weight row");
    if (atoms_.empty()) {
        for (std::size_t i = 0; i < endowment_.size(); ++i)
            atoms_.push_back("w" + std::to_string(i));
    }
    if (atoms_.size() != endowment_.size())
        throw std::invalid_argument("atom labels and endowment lengths differ");
    for (std::size_t m = 0; m < model_weights_.size(); ++m) {
        const auto& w = model_weights_[m];
        if (w.size() != endowment_.size())
            throw std::invalid_argument("weights[" + std::to_string(m) +
                                        "] length does not match the atom count");
        double sum = 0.0;
        for (double x : w) {
            if (!(x >= 0.0)) {
                throw std::invalid_argument("weights[" + std::to_string(m) +
                                            "] contains a negative entry");
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("weights[" + std::to_string(m) + "] sums to " +
                                        std::to_string(sum) + ", expected 1 within 1e-12");
        }
    }
}

double criterion_value(const SampleSpace& s, const PoolCriterion& c,
                       const std::vector<double>& share) {
    switch (c.kind) {
        case CriterionKind::expected_utility:
            return expected_u(s.model_weights()[0], share, c.u);
        case CriterionKind::robust_ce: {
            double best = kInf;
            for (std::size_t m = 0; m < s.n_models(); ++m) {
                const double eu = expected_u(s.model_weights()[m], share, c.u);
                const double candidate = c.u.inverse(eu) + penalty_at(c.alphas, m, 0.0);
                best = std::min(best, candidate);
            }
            return best;
        }
        case CriterionKind::homothetic: {
            double best = kInf;
            for (std::size_t m = 0; m < s.n_models(); ++m) {
                const double eu = expected_u(s.model_weights()[m], share, c.u);
                best = std::min(best, eu * penalty_at(c.betas, m, 1.0));
            }
            return best;
        }
        case CriterionKind::variational: {
            double best = kInf;
            for (std::size_t m = 0; m < s.n_models(); ++m) {
                const double eu = expected_u(s.model_weights()[m], share, c.u);
                best = std::min(best, eu + penalty_at(c.alphas, m, 0.0));
            }
            return best;
        }
    }
    throw std::logic_error("unreachable criterion kind");
}

Allocation proportional_allocation(const SampleSpace& s, int n) {
    if (n < 1) throw std::invalid_argument("agent count must be >= 1");
    std::vector<double> row(s.n_atoms());
    for (std::size_t a = 0; a < s.n_atoms(); ++a)
        row[a] = s.endowment()[a] / static_cast<double>(n);
    return Allocation{std::vector<std::vector<double>>(static_cast<std::size_t>(n), row)};
}

double pareto_gap(const SampleSpace& s, const PoolCriterion& c, const Allocation& a) {
    validate_allocation(s, a);
    const int n = static_cast<int>(a.shares.size());

    std::vector<double> prop(s.n_atoms());
    for (std::size_t atom = 0; atom < s.n_atoms(); ++atom)
        prop[atom] = s.endowment()[atom] / static_cast<double>(n);
    const double base = criterion_value(s, c, prop);
    if (base == -kInf)
        throw std::domain_error("proportional share leaves the utility domain on a charged atom");

    // Summed as per-agent differences so the proportional allocation maps
    // to exactly zero.
    double gap = 0.0;
    for (const auto& row : a.shares) {
        const double ci = criterion_value(s, c, row);
        if (ci == -kInf) return kInf;  // strictly dominated allocation
        gap += base - ci;
    }
    return gap;
}

ParetoSearchResult pareto_search(const SampleSpace& s, const PoolCriterion& c, int n, int trials,
                                 std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("agent count must be >= 1");
    if (trials < 1) throw std::invalid_argument("trial count must be >= 1");

    const bool unbounded_domain = c.u.domain_lower() == -kInf;
    double transfer_scale = 0.0;
    for (double w : s.endowment()) transfer_scale = std::max(transfer_scale, std::abs(w));
    transfer_scale = 0.25 * (1.0 + transfer_scale);

    ParetoSearchResult result{kInf, Allocation{}};
    const std::size_t agents = static_cast<std::size_t>(n);
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::stream_seed(seed, static_cast<std::uint64_t>(t)));
        Allocation alloc{std::vector<std::vector<double>>(agents,
                                                          std::vector<double>(s.n_atoms()))};

        // Random convex split per atom keeps bounded-domain shares inside
        // the domain whenever the endowment is.
        for (std::size_t atom = 0; atom < s.n_atoms(); ++atom) {
            std::vector<double> weights(agents);
            double total = 0.0;
            for (std::size_t i = 0; i < agents; ++i) {
                weights[i] = -std::log1p(-detail::uniform01(rng));
                total += weights[i];
            }
            for (std::size_t i = 0; i < agents; ++i)
                alloc.shares[i][atom] = weights[i] / total * s.endowment()[atom];
        }

        // Zero-sum cash transfers on every other trial; only meaningful
        // when shifted shares cannot fall out of the domain.
        if (unbounded_domain && (t % 2 == 1)) {
            std::vector<double> cash(agents);
            double mean = 0.0;
            for (std::size_t i = 0; i < agents; ++i) {
                cash[i] = (2.0 * detail::uniform01(rng) - 1.0) * transfer_scale;
                mean += cash[i];
            }
            mean /= static_cast<double>(agents);
            for (std::size_t i = 0; i < agents; ++i) {
                for (std::size_t atom = 0; atom < s.n_atoms(); ++atom)
                    alloc.shares[i][atom] += cash[i] - mean;
            }
        }

        const double gap = pareto_gap(s, c, alloc);
        if (gap < result.min_gap) {
            result.min_gap = gap;
            result.worst_allocation = alloc;
        }
    }
    return result;
}

}  // namespace poolrisk
