#pragma once
// Batch commands behind the command-line front end.  Each writes CSV tables
// plus one machine-readable JSON summary into the output directory, prints a
// short note to `out`, and returns the process exit code (0 ok, 1 config
// error, 2 verification failure).  Output bytes are deterministic for a given
// config: fixed column orders, LF newlines, 9 significant digits.

#include <iosfwd>
#include <optional>
#include <string>

#include "corridor/cli/config.hpp"

namespace corridor::cli {

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    std::vector<double> points() const;
};

int cmd_solve(const RunConfig& cfg, ScenarioLabel scenario, const std::string& out_dir,
              std::optional<long long> seed, std::ostream& out);

int cmd_compare(const RunConfig& cfg, ScenarioLabel a, ScenarioLabel b,
                const std::string& out_dir, std::optional<long long> seed, std::ostream& out);

int cmd_verify(const RunConfig& cfg, ScenarioLabel scenario, const std::string& out_dir,
               std::optional<long long> seed, std::ostream& out);

int cmd_paradox_scan(const RunConfig& cfg, const GridSpec& remote_wages, const GridSpec& spacings,
                     const std::string& out_dir, std::optional<long long> seed, std::ostream& out);

// "%.9g" with a fixed locale; shared by every table writer.
std::string format_number(double v);

}  // namespace corridor::cli
