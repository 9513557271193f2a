#include "commands.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "model_io.hpp"
#include "report_csv.hpp"
#include "poolrisk/classical.hpp"
#include "poolrisk/pooling.hpp"
#include "poolrisk/rates.hpp"

namespace poolrisk::cli {

namespace {

Engine make_engine(const RunConfig& cfg) {
    if (cfg.engine == "exact") {
        if (cfg.mc_count || cfg.mc_seed)
            throw std::invalid_argument("--mc-count/--mc-seed require --engine mc");
        return Engine::exact();
    }
    if (cfg.engine == "mc")
        return Engine::monte_carlo(cfg.mc_count.value_or(10000), cfg.mc_seed.value_or(1));
    throw std::invalid_argument("unknown engine '" + cfg.engine + "' (expected exact or mc)");
}

RateKind parse_rate_kind(const std::string& kind) {
    if (kind == "robust-ce") return RateKind::robust_ce;
    if (kind == "homothetic") return RateKind::homothetic;
    if (kind == "variational") return RateKind::variational;
    throw std::invalid_argument("unknown kind '" + kind +
                                "' (expected robust-ce, homothetic or variational)");
}

CriterionKind parse_criterion(const std::string& criterion) {
    if (criterion == "eu") return CriterionKind::expected_utility;
    if (criterion == "robust-ce") return CriterionKind::robust_ce;
    if (criterion == "homothetic") return CriterionKind::homothetic;
    if (criterion == "variational") return CriterionKind::variational;
    throw std::invalid_argument("unknown criterion '" + criterion +
                                "' (expected eu, robust-ce, homothetic or variational)");
}

const char* rate_kind_name(RateKind k) {
    switch (k) {
        case RateKind::classical: return "classical";
        case RateKind::robust_ce: return "robust-ce";
        case RateKind::homothetic: return "homothetic";
        case RateKind::variational: return "variational";
    }
    return "?";
}

int cmd_ce(const RunConfig& cfg, std::ostream& out) {
    const LatticeDistribution d =
        expect_lattice(parse_model_file(cfg.model_path), cfg.model_path);
    const Utility u = parse_utility_spec(cfg.utility_spec);
    const Engine e = make_engine(cfg);
    const double ce = certainty_equivalent(u, d, cfg.n, cfg.wealth, e);
    const double premium = risk_premium(u, d, cfg.n, cfg.wealth, e);
    out << "n=" << cfg.n << " utility=" << cfg.utility_spec << " wealth="
        << format_double(cfg.wealth) << '\n';
    out << "ce=" << format_double(ce) << '\n';
    out << "premium=" << format_double(premium) << '\n';
    return kExitSuccess;
}

int cmd_rates(const RunConfig& cfg, RateKind kind, std::ostream& out) {
    const Utility u = parse_utility_spec(cfg.utility_spec);
    RateProblem problem{kind, LatticeDistribution::point_mass(0.0), u, cfg.wealth};
    if (kind == RateKind::classical) {
        problem.model = expect_lattice(parse_model_file(cfg.model_path), cfg.model_path);
    } else {
        problem.model =
            expect_ambiguity(parse_model_file(cfg.ambiguity_path), cfg.ambiguity_path);
    }

    const std::vector<int> grid =
        cfg.n_grid.empty() ? default_n_grid(cfg.n_max) : cfg.n_grid;
    const ConvergenceReport report =
        run_rates(problem, grid, make_engine(cfg), cfg.tol_rel, cfg.tol_abs);

    const RateRow& last = report.rows.back();
    out << "kind=" << rate_kind_name(kind) << " utility=" << cfg.utility_spec
        << " wealth=" << format_double(cfg.wealth) << " rows=" << report.rows.size() << '\n';
    out << "n_final=" << last.n << " value=" << format_double(last.value)
        << " gap=" << format_double(last.gap) << " n_gap=" << format_double(last.n_gap)
        << " sqrtn_gap=" << format_double(last.sqrtn_gap) << '\n';
    out << "limit_estimate=" << format_double(report.limit_estimate)
        << " target_limit=" << format_double(report.target_limit) << '\n';
    out << "bound_lower=" << format_double(report.bound_lower)
        << " bound_upper=" << format_double(report.bound_upper)
        << (report.upper_is_empirical ? " (empirical ceiling)" : "") << '\n';
    out << "verdict=" << to_string(report.verdict) << '\n';

    if (!cfg.output_path.empty()) write_report_csv(cfg.output_path, report);
    return report.verdict == Verdict::fail ? kExitFail : kExitSuccess;
}

int cmd_pareto(const RunConfig& cfg, std::ostream& out) {
    const SpaceModel sm = expect_space(parse_model_file(cfg.space_path), cfg.space_path);
    const PoolCriterion criterion{parse_criterion(cfg.criterion),
                                  parse_utility_spec(cfg.utility_spec), sm.alphas, sm.betas};

    const double prop_gap =
        pareto_gap(sm.space, criterion, proportional_allocation(sm.space, cfg.agents));
    const ParetoSearchResult search =
        pareto_search(sm.space, criterion, cfg.agents, cfg.trials, cfg.seed);

    out << "criterion=" << cfg.criterion << " utility=" << cfg.utility_spec
        << " agents=" << cfg.agents << " trials=" << cfg.trials << " seed=" << cfg.seed << '\n';
    out << "proportional_gap=" << format_double(prop_gap) << '\n';
    out << "min_gap=" << format_double(search.min_gap) << '\n';
    for (std::size_t i = 0; i < search.worst_allocation.shares.size(); ++i) {
        out << "worst_share[" << i << "]=";
        const auto& row = search.worst_allocation.shares[i];
        for (std::size_t a = 0; a < row.size(); ++a)
            out << (a ? "," : "") << format_double(row[a]);
        out << '\n';
    }
    return search.min_gap >= -1e-10 ? kExitSuccess : kExitFail;
}

int cmd_entropic(const RunConfig& cfg, std::ostream& out) {
    const LatticeDistribution d =
        expect_lattice(parse_model_file(cfg.model_path), cfg.model_path);
    if (!(cfg.gamma > 0.0)) throw std::invalid_argument("--gamma must be > 0");
    const int n = cfg.n;

    const double rho_x1 = entropic_risk(d, cfg.gamma, 1);
    const double rho_avg = entropic_risk(d, cfg.gamma, n);
    const LatticeDistribution dn = convolve_power(d, n);
    const double pooled_lhs = static_cast<double>(n) * rho_avg;
    const double pooled_rhs = entropic_risk(dn, cfg.gamma / static_cast<double>(n), 1);
    const double per_position = entropic_risk(dn, cfg.gamma, 1) / static_cast<double>(n);

    const double pooled_residual = std::abs(pooled_lhs - pooled_rhs);
    const double per_position_residual = std::abs(per_position - rho_x1);

    out << "gamma=" << format_double(cfg.gamma) << " n=" << n << '\n';
    out << "rho_x1=" << format_double(rho_x1) << '\n';
    out << "rho_avg=" << format_double(rho_avg) << '\n';
    out << "pooled_identity_lhs=" << format_double(pooled_lhs) << '\n';
    out << "pooled_identity_rhs=" << format_double(pooled_rhs) << '\n';
    out << "pooled_identity_residual=" << format_double(pooled_residual) << '\n';
    out << "per_position=" << format_double(per_position) << '\n';
    out << "per_position_residual=" << format_double(per_position_residual) << '\n';
    return (pooled_residual <= 1e-10 && per_position_residual <= 1e-10) ? kExitSuccess
                                                                        : kExitFail;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.wealth >= 0.0)) throw std::invalid_argument("initial wealth must be >= 0");
    if (cfg.n < 1) throw std::invalid_argument("pool size n must be >= 1");

    if (cfg.subcommand == "ce") return cmd_ce(cfg, out);
    if (cfg.subcommand == "rates") return cmd_rates(cfg, RateKind::classical, out);
    if (cfg.subcommand == "robust-rates")
        return cmd_rates(cfg, parse_rate_kind(cfg.kind), out);
    if (cfg.subcommand == "pareto") return cmd_pareto(cfg, out);
    if (cfg.subcommand == "entropic") return cmd_entropic(cfg, out);
    throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace poolrisk::cli
