#pragma once
// The four policy scenarios and their welfare comparison: a baseline with one
// official start time, staggered start times, telecommuting, and the combined
// scheme; plus a parameter scan for the induced-commuting cost paradox.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corridor/long_term.hpp"
#include "corridor/short_term.hpp"

namespace corridor {

// ns: one start time, everyone commutes daily.
// swh: two staggered start times, everyone commutes daily.
// tlc: one start time, remote work allowed.
// cs: staggered start times and remote work combined.
enum class ScenarioLabel { ns, swh, tlc, cs };

struct Scenario {
    ScenarioLabel label = ScenarioLabel::ns;
    bool remote_allowed = false;
    int start_times = 1;  // 1 or 2
};

Scenario scenario_from_label(ScenarioLabel label);
const char* to_string(ScenarioLabel label);
std::optional<ScenarioLabel> parse_scenario(std::string_view text);

// Shared base configuration all four scenarios draw from.
struct ScenarioInputs {
    CorridorSpec corridor;
    WageSpec wages;
    double early_slope = 0.0;
    double late_slope = 0.0;
    double horizon_lo = 0.0;
    double horizon_hi = 0.0;
    double t_single = 0.0;            // the lone start time
    double t_pair_lo = 0.0, t_pair_hi = 0.0;  // the staggered pair

    ScheduleSpec schedule_for(int start_times) const;
    double pair_spacing() const { return t_pair_hi - t_pair_lo; }
};

const ScenarioInputs& validate(const ScenarioInputs& in);

struct ScenarioReport {
    Scenario scenario;
    CbarMode mode = CbarMode::exact;
    ScenarioInputs inputs;
    LongTermSolution lt;
    ShortTermSolution st;
    bool equilibrium_ok = false;  // queue replacement condition held
    bool window_warning = false;  // equilibrium constructed over split windows
    double total_cost = 0.0;      // sum lambda_i X_i
    double utility = 0.0;
};

// Long-term solve fixes the commuter masses, then the short-term solution is
// materialized at those masses; the report asserts their mutual consistency.
ScenarioReport run_scenario(const ScenarioInputs& in, ScenarioLabel label, CbarMode mode);

struct Verdict {
    std::string claim;     // what is being checked, e.g. "office_both_cost_drop[1]"
    std::string expected;  // direction in words, e.g. "delta == -spacing*delta"
    double observed = 0.0;
    bool pass = false;
};

struct ComparisonReport {
    ScenarioLabel a = ScenarioLabel::ns;
    ScenarioLabel b = ScenarioLabel::ns;
    std::vector<double> d_cost;  // b minus a, per location
    std::vector<double> d_rent;
    double d_utility = 0.0;
    double d_total_cost = 0.0;
    std::vector<Verdict> verdicts;
    std::string orientation;  // pair order the verdicts were evaluated in
    bool paradox = false;     // equal utility, strictly higher total cost
};

// Evaluates every directional claim applicable to the pair.  Both reports
// must come from the same base configuration and mode.
ComparisonReport compare(const ScenarioReport& a, const ScenarioReport& b);

struct ParadoxPoint {
    double remote_wage = 0.0;
    double spacing = 0.0;  // staggered pair spread, centered on t_single
    bool ok = false;
    std::string error;
    bool paradox = false;
    double d_total_cost = 0.0;
};

// Re-runs tlc vs cs over the grid; per-point failures are recorded inline and
// the scan continues.
std::vector<ParadoxPoint> paradox_scan(const ScenarioInputs& base,
                                       const std::vector<double>& remote_wages,
                                       const std::vector<double>& spacings,
                                       CbarMode mode);

}  // namespace corridor
