// Command-line front end: solve, compare, verify, paradox-scan.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "corridor/cli/commands.hpp"

namespace {

using corridor::CbarMode;
using corridor::ScenarioLabel;
using corridor::cli::GridSpec;
using corridor::cli::RunConfig;

ScenarioLabel require_scenario(const std::string& text) {
    const auto label = corridor::parse_scenario(text);
    if (!label)
        throw corridor::validation_error("unknown scenario '" + text +
                                         "' (expected ns, swh, tlc or cs)");
    return *label;
}

CbarMode parse_mode(const std::string& text) {
    if (text == "exact") return CbarMode::exact;
    if (text == "merged" || text == "merged_formula") return CbarMode::merged_formula;
    throw corridor::validation_error("unknown mode '" + text +
                                     "' (expected exact or merged)");
}

GridSpec parse_grid(const std::string& text, const std::string& flag) {
    GridSpec g;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    try {
        if (c1 == std::string::npos || c2 == std::string::npos) throw std::invalid_argument("");
        std::size_t used = 0;
        g.lo = std::stod(text.substr(0, c1), &used);
        if (used != c1) throw std::invalid_argument("");
        const std::string mid = text.substr(c1 + 1, c2 - c1 - 1);
        g.hi = std::stod(mid, &used);
        if (used != mid.size()) throw std::invalid_argument("");
        const std::string tail = text.substr(c2 + 1);
        g.n = std::stoi(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw corridor::validation_error(flag + " expects lo:hi:n, got '" + text + "'");
    }
    if (g.n < 1) throw corridor::validation_error(flag + ": n must be at least 1");
    if (!(g.hi >= g.lo)) throw corridor::validation_error(flag + ": hi must be >= lo");
    return g;
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::string mode_override;
    double dt_override = -1.0;
    long long seed_value = 0;
    bool seed_set = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (default: out)");
        cmd->add_option("--mode", mode_override, "exact | merged (overrides the config)");
        cmd->add_option("--dt", dt_override, "oracle step (overrides the config)");
        cmd->add_option("--seed", seed_value, "echoed into summaries for provenance")
            ->each([this](const std::string&) { seed_set = true; });
    }

    RunConfig load() const {
        RunConfig cfg = corridor::cli::load_config(config_path);
        if (!mode_override.empty()) cfg.mode = parse_mode(mode_override);
        if (dt_override > 0.0) cfg.dt = dt_override;
        return cfg;
    }

    std::optional<long long> seed() const {
        return seed_set ? std::optional<long long>(seed_value) : std::nullopt;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corridor commuting equilibrium solver"};
    app.require_subcommand(1);

    CLI::App* solve = app.add_subcommand("solve", "solve one scenario and write its tables");
    CLI::App* cmp = app.add_subcommand("compare", "solve two scenarios and check the claims");
    CLI::App* verify = app.add_subcommand("verify", "run the brute-force checks on a scenario");
    CLI::App* scan = app.add_subcommand("paradox-scan", "scan remote wage x spacing for the paradox");

    CommonArgs solve_args, cmp_args, verify_args, scan_args;
    std::string solve_scenario, verify_scenario, pair_text;
    std::string remote_grid_text, spacing_grid_text;

    solve_args.attach(solve);
    solve->add_option("--scenario", solve_scenario, "ns | swh | tlc | cs")->required();
    cmp_args.attach(cmp);
    cmp->add_option("--pair", pair_text, "two scenario labels, e.g. tlc,cs")->required();
    verify_args.attach(verify);
    verify->add_option("--scenario", verify_scenario, "ns | swh | tlc | cs")->required();
    scan_args.attach(scan);
    scan->add_option("--remote-grid", remote_grid_text, "theta_remote grid lo:hi:n")->required();
    scan->add_option("--spacing-grid", spacing_grid_text, "start-time spacing grid lo:hi:n")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return corridor::cli::cmd_solve(solve_args.load(), require_scenario(solve_scenario),
                                            solve_args.out_dir, solve_args.seed(), std::cout);
        }
        if (cmp->parsed()) {
            const auto comma = pair_text.find(',');
            if (comma == std::string::npos)
                throw corridor::validation_error("--pair expects two labels, e.g. ns,swh");
            const ScenarioLabel a = require_scenario(pair_text.substr(0, comma));
            const ScenarioLabel b = require_scenario(pair_text.substr(comma + 1));
            return corridor::cli::cmd_compare(cmp_args.load(), a, b, cmp_args.out_dir,
                                              cmp_args.seed(), std::cout);
        }
        if (verify->parsed()) {
            return corridor::cli::cmd_verify(verify_args.load(), require_scenario(verify_scenario),
                                             verify_args.out_dir, verify_args.seed(), std::cout);
        }
        if (scan->parsed()) {
            return corridor::cli::cmd_paradox_scan(
                scan_args.load(), parse_grid(remote_grid_text, "--remote-grid"),
                parse_grid(spacing_grid_text, "--spacing-grid"), scan_args.out_dir,
                scan_args.seed(), std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
