#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "poolrisk/premia.hpp"

using namespace poolrisk;

namespace {

LatticeDistribution fair_pm1(double step = 1.0) {
    const int k = static_cast<int>(std::llround(2.0 / step));
    std::vector<double> probs(static_cast<std::size_t>(k) + 1, 0.0);
    probs.front() = 0.5;
    probs.back() = 0.5;
    return LatticeDistribution(-1.0, step, probs);
}

// means {0, 0.2} as point masses with additive penalties {0.1, 0}
AmbiguityModel variational_example(double alpha0 = 0.1, double alpha1 = 0.0) {
    return AmbiguityModel({{LatticeDistribution(0.0, 0.2, {1.0}), alpha0, 1.0},
                           {LatticeDistribution(0.2, 0.2, {1.0}), alpha1, 1.0}});
}

}  // namespace

TEST_CASE("homothetic expectation") {
    const AmbiguityModel two({{LatticeDistribution(1.0, 0.2, {1.0}), 0.0, 1.0},
                              {LatticeDistribution(1.2, 0.2, {1.0}), 0.0, 1.5}});
    const RobustValue rv = homothetic_expectation(two, 0.0);
    CHECK(rv.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rv.index == 0);

    // beta == 1 collapses onto the worst-case expectation with zero penalty
    const AmbiguityModel flat({{fair_pm1(), 0.0, 1.0},
                               {LatticeDistribution(0.0, 1.0, {0.25, 0.75}), 0.0, 1.0}});
    CHECK(homothetic_expectation(flat, 0.4).value ==
          doctest::Approx(robust_expectation(flat, 0.4).value).epsilon(1e-13));

    CHECK(homothetic_expectation(
              AmbiguityModel({{LatticeDistribution::point_mass(0.3), 0.0, 1.0}}), 1.0)
              .value == doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("homothetic certainty equivalent") {
    const Utility ex = Utility::exponential(1.0);

    SUBCASE("beta == 1 singleton is the classical certainty equivalent") {
        const LatticeDistribution law = fair_pm1();
        const AmbiguityModel single({{law, 0.0, 1.0}});
        CHECK(homothetic_certainty_equivalent(single, ex, 2, 1.0).value ==
              doctest::Approx(certainty_equivalent(ex, law, 2, 1.0)).epsilon(1e-13));
    }

    SUBCASE("two branches enumerate explicitly") {
        const AmbiguityModel two({{LatticeDistribution::point_mass(0.0), 0.0, 1.0},
                                  {LatticeDistribution(-1.0, 1.0, {0.5, 0.0, 0.5}), 0.0, 1.2}});
        const double branch_point = ex.value(1.0);
        const double branch_fair = 1.2 * 0.5 * (ex.value(0.0) + ex.value(2.0));
        const RobustValue rv = homothetic_certainty_equivalent(two, ex, 1, 1.0);
        CHECK(rv.value ==
              doctest::Approx(ex.inverse(std::min(branch_point, branch_fair))).epsilon(1e-13));
        CHECK(rv.index == 1);
    }

    SUBCASE("the inverse commutes with the worst case") {
        // u^{-1}(min_Q E_Q[u] beta) == min_Q u^{-1}(E_Q[u] beta). A branch
        // whose reweighted utility level exits the image corresponds to a
        // level u never reaches, i.e. an infinite certainty equivalent; it
        // can never attain the min (a beta = 1 branch always stays below).
        const AmbiguityModel two({{fair_pm1(0.5), 0.0, 1.0},
                                  {LatticeDistribution(-1.0, 0.5, {0.3, 0, 0.2, 0, 0.5}), 0.0,
                                   1.4}});
        for (const Utility& u : {Utility::exponential(0.8), Utility::power(0.5),
                                 Utility::power(2.0), Utility::logarithmic()}) {
            const double v = 2.0;
            double by_hand = std::numeric_limits<double>::infinity();
            for (const WeightedModel& m : two.models()) {
                const double eu =
                    expect_fn(m.law, 4, [&u](double x) { return u.value(x); }, v);
                const double level = eu * m.beta;
                if (level >= u.image_upper()) continue;
                by_hand = std::min(by_hand, u.inverse(level));
            }
            CHECK(homothetic_certainty_equivalent(two, u, 4, v).value ==
                  doctest::Approx(by_hand).epsilon(1e-12));
        }
    }
}

TEST_CASE("homothetic premium of a point-mass singleton is zero") {
    const AmbiguityModel point_only({{LatticeDistribution::point_mass(0.7), 0.0, 1.0}});
    CHECK(homothetic_premium(point_only, Utility::exponential(1.0), 3, 0.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("homothetic premium decreases to zero on a two-model set") {
    std::vector<double> probs(27, 0.0);
    probs.front() = 0.5;
    probs.back() = 0.5;
    const AmbiguityModel a({{fair_pm1(0.1), 0.0, 1.0},
                            {LatticeDistribution(-1.3, 0.1, probs), 0.0, 1.5}});
    const Utility ex = Utility::exponential(1.0);

    double previous = std::numeric_limits<double>::infinity();
    for (int n : {1, 2, 4, 16, 64, 256, 1024}) {
        const double premium = homothetic_premium(a, ex, n, 0.0);
        CHECK(premium >= -1e-12);
        CHECK(premium <= previous + 1e-10);
        CHECK(homothetic_certainty_equivalent(a, ex, n, 0.0).value <=
              homothetic_expectation(a, 0.0).value + 1e-12);
        previous = premium;
    }
    CHECK(previous < 2e-3);

    const RateBounds b = homothetic_rate_bounds(a, ex, 0.0);
    CHECK(b.lower == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(0.5 * 1.69 * 1.5).epsilon(1e-12));
    CHECK(1024.0 * previous <= b.upper * 1.02 + 0.01);
}

TEST_CASE("homothetic rate bounds reductions") {
    const Utility ex = Utility::exponential(1.0);
    const LatticeDistribution law = fair_pm1(0.5);

    const AmbiguityModel single({{law, 0.0, 1.0}});
    const RateBounds b = homothetic_rate_bounds(single, ex, 0.2);
    CHECK(b.lower == doctest::Approx(pratt_limit(ex, law, 0.2)).epsilon(1e-13));
    CHECK(b.upper == doctest::Approx(b.lower).epsilon(1e-13));

    const AmbiguityModel flat({{law, 0.0, 1.0},
                               {LatticeDistribution(-1.0, 0.5, {0.25, 0, 0.25, 0, 0.5}), 0.0,
                                1.0}});
    const RateBounds hb = homothetic_rate_bounds(flat, ex, 0.0);
    const RateBounds rb = robust_rate_bounds(flat, ex, 0.0);
    CHECK(hb.lower == doctest::Approx(rb.lower).epsilon(1e-13));
    CHECK(hb.upper == doctest::Approx(rb.upper).epsilon(1e-13));
}

TEST_CASE("variational certainty equivalent and limit") {
    const Utility ex = Utility::exponential(1.0);
    const AmbiguityModel a = variational_example();

    SUBCASE("two point masses enumerate explicitly and ignore n") {
        for (int n : {1, 2, 64, 512}) {
            const RobustValue rv = variational_certainty_equivalent(a, ex, n, 0.0);
            CHECK(rv.value == doctest::Approx(-std::log(0.9)).epsilon(1e-13));
            CHECK(rv.value == doctest::Approx(0.105361).epsilon(1e-5));
            CHECK(rv.index == 0);
        }
        const RobustValue lim = variational_limit(a, ex, 0.0);
        CHECK(lim.value == doctest::Approx(-std::log(0.9)).epsilon(1e-13));
        CHECK(lim.index == 0);
    }

    SUBCASE("alpha == 0 collapses onto the robust certainty equivalent") {
        std::vector<double> probs(11, 0.0);
        probs.front() = 0.5;
        probs.back() = 0.5;
        const AmbiguityModel flat({{LatticeDistribution(-1.0, 0.2, probs), 0.0, 1.0},
                                   {LatticeDistribution(0.2, 0.2, {1.0}), 0.0, 1.0}});
        for (int n : {1, 4, 32}) {
            CHECK(variational_certainty_equivalent(flat, ex, n, 0.5).value ==
                  doctest::Approx(robust_certainty_equivalent(flat, ex, n, 0.5).value)
                      .epsilon(1e-12));
        }
        CHECK(variational_limit(flat, ex, 0.5).value ==
              doctest::Approx(robust_expectation(flat, 0.5).value).epsilon(1e-12));
    }

    SUBCASE("singleton with zero penalty tends to wealth plus mean") {
        const AmbiguityModel single({{LatticeDistribution(0.2, 0.2, {1.0}), 0.0, 1.0}});
        CHECK(variational_limit(single, ex, 0.3).value == doctest::Approx(0.5).epsilon(1e-13));
    }

    SUBCASE("nondecreasing in n for a non-degenerate set") {
        std::vector<double> probs(11, 0.0);
        probs.front() = 0.5;
        probs.back() = 0.5;
        const AmbiguityModel spread({{LatticeDistribution(-1.0, 0.2, probs), 0.05, 1.0},
                                     {LatticeDistribution(-1.2, 0.2, probs), 0.0, 1.0}});
        double previous = -std::numeric_limits<double>::infinity();
        for (int n : {1, 2, 4, 16, 64, 256}) {
            const double value = variational_certainty_equivalent(spread, ex, n, 0.0).value;
            CHECK(value >= previous - 1e-10);
            CHECK(value <= variational_limit(spread, ex, 0.0).value + 1e-12);
            previous = value;
        }
    }
}

TEST_CASE("variational premium and its limit") {
    const Utility ex = Utility::exponential(1.0);
    const AmbiguityModel a = variational_example();

    // the limit premium is negative here: ambiguity is priced into the
    // worst-case expectation more than into the variational value
    const double limit_premium =
        robust_expectation(a, 0.0).value - variational_limit(a, ex, 0.0).value;
    CHECK(limit_premium == doctest::Approx(0.1 + std::log(0.9)).epsilon(1e-12));
    CHECK(limit_premium == doctest::Approx(-0.005361).epsilon(1e-3));
    CHECK(limit_premium < 0.0);

    for (int n : {1, 8, 128}) {
        CHECK(variational_premium(a, ex, n, 0.0) ==
              doctest::Approx(limit_premium).epsilon(1e-12));
    }

    // exponential closed form of the limit: worst-case mean-plus-penalty
    // plus (1/gamma) log of the best-case penalized discount factor
    double inner = -std::numeric_limits<double>::infinity();
    for (const WeightedModel& m : a.models())
        inner = std::max(inner, std::exp(-1.0 * (moments(m.law).mean + 0.0)) - m.alpha);
    const double closed_form = 0.0 + robust_expectation(a, 0.0).value + std::log(inner);
    CHECK(limit_premium == doctest::Approx(closed_form).epsilon(1e-12));

    // with trivial alpha the premium vanishes (point masses: exactly)
    const AmbiguityModel flat = variational_example(0.0, 0.0);
    for (int n : {1, 16}) {
        CHECK(variational_premium(flat, ex, n, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("variational rate bounds") {
    const Utility ex = Utility::exponential(1.0);

    SUBCASE("zero penalty at the attaining model gives the Pratt form") {
        std::vector<double> probs(11, 0.0);
        probs.front() = 0.5;
        probs.back() = 0.5;
        const LatticeDistribution law(-1.0, 0.2, probs);
        const AmbiguityModel single({{law, 0.0, 1.0}});
        CHECK(variational_rate_bounds(single, ex, 0.3).lower ==
              doctest::Approx(pratt_limit(ex, law, 0.3)).epsilon(1e-13));
    }

    SUBCASE("point masses have a vanishing lower bound") {
        CHECK(variational_rate_bounds(variational_example(), ex, 0.0).lower ==
              doctest::Approx(0.0).epsilon(1e-14));
    }

    SUBCASE("penalty at the attaining model deflates the curvature ratio") {
        // attaining model: mean 0.2, variance 1, alpha 0.05
        std::vector<double> probs(11, 0.0);
        probs.front() = 0.5;
        probs.back() = 0.5;
        const AmbiguityModel a({{LatticeDistribution(-0.8, 0.2, probs), 0.05, 1.0},
                                {LatticeDistribution(0.4, 0.2, {1.0}), 0.0, 1.0}});
        const RobustValue lim = variational_limit(a, ex, 0.0);
        REQUIRE(lim.index == 0);
        const double expected =
            std::exp(-0.2) / (std::exp(-0.2) - 0.05) * 1.0 / 2.0;
        CHECK(variational_rate_bounds(a, ex, 0.0).lower ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(variational_rate_bounds(a, ex, 0.0).upper_exists);
    }
}

TEST_CASE("reduction chain across the functional families") {
    // beta==1 homothetic == alpha==0 variational == alpha==0 robust == classical (singleton)
    const LatticeDistribution law = fair_pm1(0.5);
    const AmbiguityModel single({{law, 0.0, 1.0}});
    for (const Utility& u : {Utility::exponential(1.5), Utility::power(2.0)}) {
        const double v = 2.0;
        for (int n : {1, 4, 64}) {
            const double classical = certainty_equivalent(u, law, n, v);
            CHECK(homothetic_certainty_equivalent(single, u, n, v).value ==
                  doctest::Approx(classical).epsilon(1e-10));
            CHECK(variational_certainty_equivalent(single, u, n, v).value ==
                  doctest::Approx(classical).epsilon(1e-10));
            CHECK(robust_certainty_equivalent(single, u, n, v).value ==
                  doctest::Approx(classical).epsilon(1e-10));
        }
    }
}
