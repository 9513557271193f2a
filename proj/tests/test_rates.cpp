#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oracles.hpp"
#include "poolrisk/rates.hpp"

using namespace poolrisk;

namespace {

LatticeDistribution bernoulli_half() { return LatticeDistribution(0.0, 1.0, {0.5, 0.5}); }

AmbiguityModel two_scales(double beta1 = 1.0) {
    std::vector<double> wide(27, 0.0);
    wide.front() = 0.5;
    wide.back() = 0.5;
    std::vector<double> narrow(21, 0.0);
    narrow.front() = 0.5;
    narrow.back() = 0.5;
    return AmbiguityModel({{LatticeDistribution(-1.0, 0.1, narrow), 0.0, 1.0},
                           {LatticeDistribution(-1.3, 0.1, wide), 0.0, beta1}});
}

}  // namespace

TEST_CASE("default n grid") {
    CHECK(default_n_grid(1) == std::vector<int>{1});
    CHECK(default_n_grid(4096).size() == 13);
    CHECK(default_n_grid(100) == std::vector<int>{1, 2, 4, 8, 16, 32, 64});
    CHECK_THROWS_AS(default_n_grid(0), std::invalid_argument);
}

TEST_CASE("aitken limit") {
    CHECK(aitken_limit({2.5, 2.5, 2.5}) == doctest::Approx(2.5).epsilon(1e-15));

    std::vector<double> geometric;
    for (int k = 10; k <= 12; ++k) geometric.push_back(1.0 + std::pow(2.0, -k));
    CHECK(aitken_limit(geometric) == doctest::Approx(1.0).epsilon(1e-9));

    // vanishing second difference falls back to the last entry
    CHECK(aitken_limit({1.0, 2.0, 3.0}) == doctest::Approx(3.0).epsilon(1e-15));

    CHECK_THROWS_AS(aitken_limit({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("classical report hits the Pratt constant") {
    const RateProblem p{RateKind::classical, bernoulli_half(), Utility::exponential(2.0), 0.0};
    const ConvergenceReport r = run_rates(p, default_n_grid(512));

    CHECK(r.bound_lower == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.bound_upper == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.sqrtn_bound == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.target_limit == 0.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(std::abs(r.rows.back().n_gap - 0.25) < 0.01);
    CHECK(std::abs(r.limit_estimate - 0.25) < 1e-3);

    // the gap column is the risk premium
    for (const RateRow& row : r.rows) {
        CHECK(row.gap ==
              doctest::Approx(risk_premium(Utility::exponential(2.0), bernoulli_half(), row.n,
                                           0.0))
                  .epsilon(1e-12));
        CHECK(row.std_err == 0.0);
    }
}

TEST_CASE("aitken estimate agrees with the deep-grid scaled gap") {
    for (const Utility& u : {Utility::exponential(2.0), Utility::logarithmic()}) {
        const double v = u.domain_lower() == 0.0 ? 1.0 : 0.0;
        const RateProblem p{RateKind::classical, bernoulli_half(), u, v};
        const ConvergenceReport r = run_rates(p, default_n_grid(4096));
        CHECK(std::abs(r.rows.back().n_gap - r.limit_estimate) <=
              1e-3 * (1.0 + std::abs(r.limit_estimate)));
    }
}

TEST_CASE("robust report kinds") {
    const Utility ex = Utility::exponential(1.0);

    SUBCASE("robust-ce lands between the sandwich bounds") {
        const RateProblem p{RateKind::robust_ce, two_scales(), ex, 0.0};
        const ConvergenceReport r = run_rates(p, default_n_grid(1024));
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.bound_lower == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.bound_upper == doctest::Approx(0.845).epsilon(1e-12));
        CHECK(r.rows.back().n_gap > r.bound_lower * 0.98 - 0.01);
        CHECK(r.rows.back().n_gap < r.bound_upper * 1.02 + 0.01);
    }

    SUBCASE("homothetic premium verdict") {
        const RateProblem p{RateKind::homothetic, two_scales(1.5), ex, 0.0};
        const ConvergenceReport r = run_rates(p, default_n_grid(1024));
        CHECK(r.verdict == Verdict::pass);
        CHECK(!r.upper_is_empirical);
        CHECK(r.target_limit == 0.0);
    }

    SUBCASE("variational carries an empirical ceiling and a nonzero target") {
        const AmbiguityModel a({{LatticeDistribution(0.0, 0.2, {1.0}), 0.1, 1.0},
                                {LatticeDistribution(0.2, 0.2, {1.0}), 0.0, 1.0}});
        const RateProblem p{RateKind::variational, a, ex, 0.0};
        const ConvergenceReport r = run_rates(p, default_n_grid(64));
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.upper_is_empirical);
        CHECK(r.target_limit == doctest::Approx(0.1 + std::log(0.9)).epsilon(1e-12));
        for (const RateRow& row : r.rows) CHECK(row.gap == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("grid validation") {
    const RateProblem p{RateKind::classical, bernoulli_half(), Utility::linear(), 0.0};
    CHECK_THROWS_AS(run_rates(p, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_rates(p, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(run_rates(p, {4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(run_rates(p, {0, 1}), std::invalid_argument);
    CHECK_NOTHROW(run_rates(p, {1, 3, 9, 27}));  // arbitrary increasing grids are fine
}

TEST_CASE("check_bounds flags the dependent-sequence curve") {
    // identically distributed but alternating-sign risks: the pooled
    // certainty equivalent collapses at even pool sizes and the scaled gap
    // alternates toward 0 instead of the i.i.d. constant gamma/2
    const double gamma = 2.0;
    ConvergenceReport r;
    r.bound_lower = gamma / 2.0;
    r.bound_upper = gamma / 2.0;
    r.sqrtn_bound = 1.0;
    r.target_limit = 0.0;
    for (int n = 1; n <= 16; ++n) {
        const double value =
            (n % 2 == 1) ? gaussian_entropic_ce(0.0, 1.0 / n, gamma) : 0.0;
        const double gap = 0.0 - value;
        r.rows.push_back(RateRow{n, value, gap, n * gap, std::sqrt(n) * gap, 0.0});
    }
    r.limit_estimate = aitken_limit({r.rows[13].n_gap, r.rows[14].n_gap, r.rows[15].n_gap});
    CHECK(check_bounds(r, 0.02, 0.01) == Verdict::fail);
    CHECK(std::abs(r.rows.back().n_gap - gamma / 2.0) > 0.9);
}

TEST_CASE("check_bounds downgrades noisy violations to inconclusive") {
    ConvergenceReport r;
    r.bound_lower = 0.25;
    r.bound_upper = 0.25;
    r.sqrtn_bound = std::numeric_limits<double>::quiet_NaN();
    // tiny monotonicity wiggle, well inside four standard errors
    r.rows.push_back(RateRow{1, 0.40, 0.100, 0.100, 0.100, 0.01});
    r.rows.push_back(RateRow{2, 0.38, 0.120, 0.240, 0.170, 0.01});
    r.rows.push_back(RateRow{4, 0.44, 0.060, 0.242, 0.121, 0.01});
    r.rows.push_back(RateRow{8, 0.47, 0.031, 0.248, 0.088, 0.01});
    CHECK(check_bounds(r, 0.02, 0.01) == Verdict::inconclusive);
    // the same wiggle with exact rows is a hard failure
    for (RateRow& row : r.rows) row.std_err = 0.0;
    CHECK(check_bounds(r, 0.02, 0.01) == Verdict::fail);
}

TEST_CASE("monte carlo reports reproduce exact reports within noise") {
    const RateProblem p{RateKind::classical, bernoulli_half(), Utility::exponential(1.0), 0.0};
    const std::vector<int> grid = default_n_grid(128);
    const ConvergenceReport exact = run_rates(p, grid);
    const ConvergenceReport mc = run_rates(p, grid, Engine::monte_carlo(20000, 5));

    REQUIRE(mc.rows.size() == exact.rows.size());
    for (std::size_t i = 0; i < mc.rows.size(); ++i) {
        CHECK(mc.rows[i].std_err > 0.0);
        CHECK(std::abs(mc.rows[i].value - exact.rows[i].value) <=
              4.0 * mc.rows[i].std_err + 1e-12);
    }
    CHECK(mc.verdict != Verdict::fail);

    // identical seeds reproduce the report exactly
    const ConvergenceReport mc2 = run_rates(p, grid, Engine::monte_carlo(20000, 5));
    for (std::size_t i = 0; i < mc.rows.size(); ++i)
        CHECK(mc.rows[i].value == mc2.rows[i].value);
}
