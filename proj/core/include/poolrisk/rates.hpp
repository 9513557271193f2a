#pragma once

#include <string>
#include <variant>
#include <vector>

#include "poolrisk/ambiguity.hpp"
#include "poolrisk/classical.hpp"
#include "poolrisk/lattice.hpp"
#include "poolrisk/premia.hpp"
#include "poolrisk/utility.hpp"

namespace poolrisk {

enum class RateKind { classical, robust_ce, homothetic, variational };

// One expanding-pool convergence study: a functional of v + S_n/n chosen
// by `kind`, driven by a single law (classical) or an ambiguity set.
struct RateProblem {
    RateKind kind;
    std::variant<LatticeDistribution, AmbiguityModel> model;
    Utility u;
    double wealth{0.0};
};

struct RateRow {
    int n;
    double value;      // functional at this pool size
    double gap;        // limit value minus value (the premium-type gap)
    double n_gap;      // n * gap
    double sqrtn_gap;  // sqrt(n) * gap
    double std_err;    // Monte Carlo standard error of value; 0 in exact mode
};

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

struct ConvergenceReport {
    std::vector<RateRow> rows;        // sorted by strictly increasing n
    double limit_estimate;            // Aitken estimate of lim n * gap
    double target_limit;              // premium limit: 0 except variational
    double bound_lower;               // theorem lower bound on lim n * gap
    double bound_upper;               // theorem upper bound, or the empirical
                                      // ceiling max_n n*gap when no formula exists
    bool upper_is_empirical{false};
    double sqrtn_bound;               // ceiling for sqrt(n)*gap when one is known
                                      // (classical: sd of X_1); NaN otherwise
    Verdict verdict{Verdict::inconclusive};
};

// {1, 2, 4, ..., n_max} (n_max rounded down to a power of two is included
// as given; the grid stops at the last power of two <= n_max).
std::vector<int> default_n_grid(int n_max);

// Aitken delta-squared extrapolation of the last three entries; falls back
// to the last entry when the second difference vanishes. Requires at least
// three entries.
double aitken_limit(const std::vector<double>& values);

// Verdict over a populated report:
//   pass requires (i) the gap column nonincreasing, (ii) the final n*gap
//   inside [lower*(1-tol_rel) - tol_abs, upper*(1+tol_rel) + tol_abs]
//   (upper side replaced by a no-persistent-growth check when the upper
//   bound is empirical), and (iii) sqrt(n)*gap below sqrtn_bound + 1e-6
//   for n >= 64 when that bound is known, otherwise no persistent growth
//   of sqrt(n)*gap over the last four grid points.
// Violations smaller than four Monte Carlo standard errors downgrade fail
// to inconclusive.
Verdict check_bounds(const ConvergenceReport& r, double tol_rel, double tol_abs = 0.01);

// Evaluates the problem on the grid, fills gaps, scaled gaps, theorem
// bounds and limit estimate, and stamps the verdict via check_bounds.
ConvergenceReport run_rates(const RateProblem& p, const std::vector<int>& n_grid,
                            const Engine& e = Engine::exact(),
                            double tol_rel = 0.02, double tol_abs = 0.01);

}  // namespace poolrisk
