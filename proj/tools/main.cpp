#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "poolrisk/lattice.hpp"

namespace {

// POOLRISK_SUPPORT_CAP caps the support size of exact convolutions.
bool apply_support_cap_env() {
    const char* cap = std::getenv("POOLRISK_SUPPORT_CAP");
    if (cap == nullptr) return true;
    try {
        const unsigned long long value = std::stoull(cap);
        poolrisk::set_support_cap(static_cast<std::size_t>(value));
    } catch (const std::exception&) {
        std::cerr << "error: POOLRISK_SUPPORT_CAP='" << cap
                  << "' is not a positive integer\n";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    using poolrisk::cli::RunConfig;

    if (!apply_support_cap_env()) return poolrisk::cli::kExitInputError;

    RunConfig cfg;
    CLI::App app{"poolrisk: certainty equivalents and risk premia of pooled i.i.d. risks,\n"
                 "classical and ambiguity-averse, with convergence-rate verification"};
    app.require_subcommand(1);

    const auto add_engine = [&cfg](CLI::App* sub) {
        sub->add_option("--engine", cfg.engine, "exact or mc")->default_str("exact");
        sub->add_option("--mc-count", cfg.mc_count, "Monte Carlo sample count (mc engine)");
        sub->add_option("--mc-seed", cfg.mc_seed, "Monte Carlo seed (mc engine)");
    };
    const auto add_tolerances = [&cfg](CLI::App* sub) {
        sub->add_option("--tol-rel", cfg.tol_rel, "relative verdict tolerance")
            ->default_str("0.02");
        sub->add_option("--tol-abs", cfg.tol_abs, "absolute verdict tolerance")
            ->default_str("0.01");
    };

    CLI::App* ce = app.add_subcommand("ce", "certainty equivalent and premium at one pool size");
    ce->add_option("--model", cfg.model_path, "lattice model JSON")->required();
    ce->add_option("--utility", cfg.utility_spec, "utility spec")->required();
    ce->add_option("--wealth", cfg.wealth, "initial wealth v >= 0");
    ce->add_option("--n", cfg.n, "pool size")->default_str("1");
    add_engine(ce);

    CLI::App* rates = app.add_subcommand("rates", "classical convergence report over an n-grid");
    rates->add_option("--model", cfg.model_path, "lattice model JSON")->required();
    rates->add_option("--utility", cfg.utility_spec, "utility spec")->required();
    rates->add_option("--wealth", cfg.wealth, "initial wealth v >= 0");
    rates->add_option("--n-max", cfg.n_max, "largest pool size (grid 1,2,4,...)")
        ->default_str("4096");
    rates->add_option("--n-grid", cfg.n_grid, "explicit comma-separated n grid")
        ->delimiter(',');
    rates->add_option("--output", cfg.output_path, "CSV report destination");
    add_engine(rates);
    add_tolerances(rates);

    CLI::App* robust = app.add_subcommand("robust-rates",
                                          "robust convergence report over an n-grid");
    robust->add_option("--ambiguity", cfg.ambiguity_path, "ambiguity model JSON")->required();
    robust->add_option("--kind", cfg.kind, "robust-ce, homothetic or variational")->required();
    robust->add_option("--utility", cfg.utility_spec, "utility spec")->required();
    robust->add_option("--wealth", cfg.wealth, "initial wealth v >= 0");
    robust->add_option("--n-max", cfg.n_max, "largest pool size (grid 1,2,4,...)")
        ->default_str("4096");
    robust->add_option("--n-grid", cfg.n_grid, "explicit comma-separated n grid")
        ->delimiter(',');
    robust->add_option("--output", cfg.output_path, "CSV report destination");
    add_engine(robust);
    add_tolerances(robust);

    CLI::App* pareto = app.add_subcommand("pareto",
                                          "randomized search for allocations beating 1/n");
    pareto->add_option("--space", cfg.space_path, "sample space JSON")->required();
    pareto->add_option("--utility", cfg.utility_spec, "utility spec")->required();
    pareto->add_option("--criterion", cfg.criterion,
                       "eu, robust-ce, homothetic or variational")
        ->default_str("eu");
    pareto->add_option("--agents", cfg.agents, "pool size n")->default_str("2");
    pareto->add_option("--trials", cfg.trials, "random allocations to draw")
        ->default_str("10000");
    pareto->add_option("--seed", cfg.seed, "search seed")->default_str("1");

    CLI::App* entropic = app.add_subcommand("entropic",
                                            "entropic risk values and scaling identities");
    entropic->add_option("--model", cfg.model_path, "lattice model JSON")->required();
    entropic->add_option("--gamma", cfg.gamma, "risk aversion > 0")->required();
    entropic->add_option("--n", cfg.n, "pool size")->default_str("8");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return poolrisk::cli::kExitInputError;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    try {
        return poolrisk::cli::run(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return poolrisk::cli::kExitInputError;
    }
}
