#include <benchmark/benchmark.h>

#include <vector>

#include "poolrisk/ambiguity.hpp"
#include "poolrisk/classical.hpp"
#include "poolrisk/lattice.hpp"
#include "poolrisk/pooling.hpp"
#include "poolrisk/rates.hpp"

namespace {

using namespace poolrisk;

LatticeDistribution bernoulli_half() { return LatticeDistribution(0.0, 1.0, {0.5, 0.5}); }

LatticeDistribution fair_grid(double c) {
    const int k = static_cast<int>(2.0 * c / 0.1 + 0.5);
    std::vector<double> probs(static_cast<std::size_t>(k) + 1, 0.0);
    probs.front() = 0.5;
    probs.back() = 0.5;
    return LatticeDistribution(-c, 0.1, probs);
}

void BM_ConvolvePower(benchmark::State& state) {
    const LatticeDistribution d = bernoulli_half();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(convolve_power(d, n));
}
BENCHMARK(BM_ConvolvePower)->Arg(64)->Arg(1024)->Arg(4096)->Arg(65536);

void BM_ConvolvePowerWideGrid(benchmark::State& state) {
    const LatticeDistribution d = fair_grid(1.3);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(convolve_power(d, n));
}
BENCHMARK(BM_ConvolvePowerWideGrid)->Arg(256)->Arg(4096);

void BM_CertaintyEquivalent(benchmark::State& state) {
    const LatticeDistribution d = bernoulli_half();
    const Utility u = Utility::exponential(2.0);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(certainty_equivalent(u, d, n, 0.0));
}
BENCHMARK(BM_CertaintyEquivalent)->Arg(256)->Arg(4096);

void BM_MonteCarloCE(benchmark::State& state) {
    const LatticeDistribution d = bernoulli_half();
    const Utility u = Utility::exponential(2.0);
    const Engine mc = Engine::monte_carlo(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(certainty_equivalent(u, d, 64, 0.0, mc));
}
BENCHMARK(BM_MonteCarloCE)->Arg(10000)->Arg(100000);

void BM_RobustRatesReport(benchmark::State& state) {
    const AmbiguityModel a({{fair_grid(1.0), 0.0, 1.0}, {fair_grid(1.3), 0.0, 1.0}});
    const RateProblem p{RateKind::robust_ce, a, Utility::exponential(1.0), 0.0};
    const std::vector<int> grid = default_n_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_rates(p, grid));
}
BENCHMARK(BM_RobustRatesReport)->Arg(1024)->Arg(4096);

void BM_ParetoSearch(benchmark::State& state) {
    const SampleSpace s({}, {{0.25, 0.25, 0.25, 0.25}, {0.1, 0.2, 0.3, 0.4}},
                        {2.0, 0.5, 1.0, 3.0});
    const PoolCriterion c{CriterionKind::robust_ce, Utility::exponential(1.0), {0.0, 0.1}};
    const int trials = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pareto_search(s, c, 3, trials, 11));
}
BENCHMARK(BM_ParetoSearch)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
