#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace poolrisk::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
    std::string subcommand;         // ce | rates | robust-rates | pareto | entropic
    std::string model_path;         // lattice file (ce, rates, entropic)
    std::string ambiguity_path;     // ambiguity file (robust-rates)
    std::string space_path;         // sample-space file (pareto)
    std::string utility_spec;
    std::string kind{"robust-ce"};  // robust-rates: robust-ce | homothetic | variational
    std::string criterion{"eu"};    // pareto: eu | robust-ce | homothetic | variational
    double wealth{0.0};
    int n{1};                       // pool size for ce / entropic
    int n_max{4096};
    std::vector<int> n_grid;        // explicit grid; overrides n_max when nonempty
    std::string engine{"exact"};    // exact | mc
    std::optional<int> mc_count;    // only valid with engine=mc
    std::optional<std::uint64_t> mc_seed;
    double gamma{1.0};              // entropic level
    int agents{2};
    int trials{10000};
    std::uint64_t seed{1};
    std::string output_path;        // CSV destination for rates kinds
    double tol_rel{0.02};
    double tol_abs{0.01};
};

// Validates the config, runs the subcommand, prints a human-readable
// summary to `out` and writes the CSV report when requested. Returns 0 on
// pass/success and 1 on a failed verdict or falsified check; input
// problems raise std::invalid_argument, which main maps to exit code 2.
// All output is deterministic given the config and seeds.
int run(const RunConfig& config, std::ostream& out);

}  // namespace poolrisk::cli
