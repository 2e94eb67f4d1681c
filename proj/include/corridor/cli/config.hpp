#pragma once
// Run configuration: a flat key = value text file with comma-separated lists.
// Unknown and duplicate keys are hard errors with line context; silent typos
// corrupt experiments.

#include <iosfwd>
#include <string>

#include "corridor/scenarios.hpp"

namespace corridor::cli {

struct RunConfig {
    ScenarioInputs inputs;
    CbarMode mode = CbarMode::exact;  // key `mode`, overridable from the command line
    double dt = 0.01;                 // oracle step, key `dt`
};

// Required keys: capacities, areas, free_flow, beta, gamma, theta_office,
// theta_remote, t_single, t_pair, horizon.  Optional: mode (default exact),
// dt (default 0.01).  `#` starts a comment.
RunConfig parse_config(std::istream& text, const std::string& source_name);
RunConfig load_config(const std::string& path);

}  // namespace corridor::cli
