#include "corridor/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "corridor/oracle/oracle.hpp"
#include "json.hpp"

namespace corridor::cli {

namespace {

using nlohmann::json;

// Round through the table format so JSON and CSV agree digit-for-digit.
double table_number(double v) { return std::stod(format_number(v)); }

json number_array(const std::vector<double>& xs) {
    json arr = json::array();
    for (double x : xs) arr.push_back(table_number(x));
    return arr;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw solve_error("cannot write output file: " + path.string());
    out << content;
}

std::filesystem::path prepare_dir(const std::string& out_dir) {
    std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void add_seed(json& summary, std::optional<long long> seed) {
    // Reproducibility metadata only: the closed forms are deterministic.
    if (seed) summary["seed"] = *seed;
}

std::string scenario_summary_note(const ScenarioReport& rep) {
    std::ostringstream note;
    note << "scenario " << to_string(rep.scenario.label) << " (" << to_string(rep.mode)
         << "): utility " << format_number(rep.utility) << ", total commuting cost "
         << format_number(rep.total_cost);
    if (rep.lt.mixed_zone > 0) note << ", mixed zone at location " << rep.lt.mixed_zone;
    return note.str();
}

json scenario_json(const ScenarioReport& rep) {
    json j;
    j["scenario"] = to_string(rep.scenario.label);
    j["mode"] = to_string(rep.mode);
    j["remote_allowed"] = rep.scenario.remote_allowed;
    j["start_times"] = rep.scenario.start_times;
    j["utility"] = table_number(rep.utility);
    j["total_cost"] = table_number(rep.total_cost);
    j["schedule_cost"] = table_number(so_schedule_cost(rep.st));
    j["queue_cost"] = table_number(so_queue_cost(rep.st));
    j["mixed_zone"] = rep.lt.mixed_zone;
    j["all_office"] = rep.lt.all_office;
    j["equilibrium_ok"] = rep.equilibrium_ok;
    j["window_warning"] = rep.window_warning;
    j["office_ratio"] = number_array(rep.lt.ratio);
    j["equalized_cost"] = number_array(rep.st.cost);
    j["rent"] = number_array(rep.lt.rent);
    j["mass"] = number_array(rep.lt.mass);
    json zones = json::array();
    for (ZoneKind z : rep.lt.zone) zones.push_back(to_string(z));
    j["zone"] = zones;
    return j;
}

std::string report_csv(const ScenarioReport& rep) {
    std::ostringstream csv;
    csv << "location,zone,office_ratio,equalized_cost,rent\n";
    const int n = rep.inputs.corridor.location_count();
    for (int i = 1; i <= n; ++i)
        csv << i << "," << to_string(rep.lt.zone[i - 1]) << ","
            << format_number(rep.lt.ratio[i - 1]) << "," << format_number(rep.st.cost[i - 1])
            << "," << format_number(rep.lt.rent[i - 1]) << "\n";
    if (rep.window_warning)
        csv << "# regime warning: an occupied commuting window splits into disjoint parts;"
            << " the staggered single-interval closed form does not apply there\n";
    return csv.str();
}

std::string delay_csv(const ScenarioReport& rep) {
    const int n = rep.inputs.corridor.location_count();
    const double lo = rep.inputs.horizon_lo, hi = rep.inputs.horizon_hi;
    std::ostringstream csv;
    csv << "t";
    for (int i = 1; i <= n; ++i) csv << ",delay_" << i;
    csv << "\n";
    for (int j = 0; j < 1000; ++j) {
        const double t = lo + j * (hi - lo) / 999.0;
        csv << format_number(t);
        for (int i = 1; i <= n; ++i) csv << "," << format_number(rep.st.bottleneck_price[i - 1](t));
        csv << "\n";
    }
    return csv.str();
}

struct Check {
    std::string name;
    double value = 0.0;
    double budget = 0.0;
    bool pass = false;
};

Check make_check(std::string name, double value, double budget) {
    return {std::move(name), value, budget, value <= budget};
}

}  // namespace

std::vector<double> GridSpec::points() const {
    if (n < 1) throw validation_error("grid needs at least one point");
    if (!(hi >= lo)) throw validation_error("grid upper bound below lower bound");
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (int k = 0; k < n; ++k) out.push_back(lo + k * (hi - lo) / (n - 1));
    return out;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // collapse negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int cmd_solve(const RunConfig& cfg, ScenarioLabel scenario, const std::string& out_dir,
              std::optional<long long> seed, std::ostream& out) {
    const ScenarioReport rep = run_scenario(cfg.inputs, scenario, cfg.mode);
    const std::filesystem::path dir = prepare_dir(out_dir);
    const std::string label = to_string(scenario);

    write_file(dir / (label + "_report.csv"), report_csv(rep));
    write_file(dir / (label + "_delay.csv"), delay_csv(rep));
    json summary = scenario_json(rep);
    add_seed(summary, seed);
    write_file(dir / (label + "_summary.json"), summary.dump(2) + "\n");

    out << scenario_summary_note(rep) << "\n";
    if (rep.window_warning)
        out << "regime warning: split commuting window; see " << label << "_report.csv\n";
    out << "wrote " << (dir / (label + "_report.csv")).string() << ", "
        << (dir / (label + "_delay.csv")).string() << ", "
        << (dir / (label + "_summary.json")).string() << "\n";
    return 0;
}

int cmd_compare(const RunConfig& cfg, ScenarioLabel a, ScenarioLabel b,
                const std::string& out_dir, std::optional<long long> seed, std::ostream& out) {
    const ScenarioReport rep_a = run_scenario(cfg.inputs, a, cfg.mode);
    const ScenarioReport rep_b = run_scenario(cfg.inputs, b, cfg.mode);
    const ComparisonReport cmp = compare(rep_a, rep_b);
    const std::filesystem::path dir = prepare_dir(out_dir);
    const std::string stem = std::string("compare_") + to_string(a) + "_" + to_string(b);

    std::ostringstream delta;
    delta << "location,d_cost,d_rent\n";
    for (std::size_t i = 0; i < cmp.d_cost.size(); ++i)
        delta << (i + 1) << "," << format_number(cmp.d_cost[i]) << ","
              << format_number(cmp.d_rent[i]) << "\n";
    write_file(dir / (stem + "_delta.csv"), delta.str());

    std::ostringstream verdicts;
    verdicts << "claim,expected,observed,pass\n";
    int passed = 0;
    for (const Verdict& v : cmp.verdicts) {
        verdicts << v.claim << "," << v.expected << "," << format_number(v.observed) << ","
                 << (v.pass ? "true" : "false") << "\n";
        passed += v.pass ? 1 : 0;
    }
    write_file(dir / (stem + "_verdicts.csv"), verdicts.str());

    json summary;
    summary["a"] = to_string(a);
    summary["b"] = to_string(b);
    summary["mode"] = to_string(cfg.mode);
    summary["orientation"] = cmp.orientation;
    summary["d_utility"] = table_number(cmp.d_utility);
    summary["d_total_cost"] = table_number(cmp.d_total_cost);
    summary["utility_a"] = table_number(rep_a.utility);
    summary["utility_b"] = table_number(rep_b.utility);
    summary["total_cost_a"] = table_number(rep_a.total_cost);
    summary["total_cost_b"] = table_number(rep_b.total_cost);
    summary["paradox"] = cmp.paradox;
    summary["verdicts_passed"] = passed;
    summary["verdicts_total"] = static_cast<int>(cmp.verdicts.size());
    json vlist = json::array();
    for (const Verdict& v : cmp.verdicts)
        vlist.push_back({{"claim", v.claim},
                         {"expected", v.expected},
                         {"observed", table_number(v.observed)},
                         {"pass", v.pass}});
    summary["verdicts"] = vlist;
    add_seed(summary, seed);
    write_file(dir / (stem + "_summary.json"), summary.dump(2) + "\n");

    out << "compare " << to_string(a) << " -> " << to_string(b) << " ("
        << to_string(cfg.mode) << "): d_utility " << format_number(cmp.d_utility)
        << ", d_total_cost " << format_number(cmp.d_total_cost) << ", paradox "
        << (cmp.paradox ? "yes" : "no") << ", verdicts " << passed << "/" << cmp.verdicts.size()
        << " pass\n";
    out << "wrote " << (dir / (stem + "_delta.csv")).string() << ", "
        << (dir / (stem + "_verdicts.csv")).string() << ", "
        << (dir / (stem + "_summary.json")).string() << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, ScenarioLabel scenario, const std::string& out_dir,
               std::optional<long long> seed, std::ostream& out) {
    const ScenarioReport rep = run_scenario(cfg.inputs, scenario, cfg.mode);
    const ScheduleSpec sched = rep.inputs.schedule_for(rep.scenario.start_times);
    const double dt = cfg.dt;
    double total_mass = 0.0;
    for (double m : rep.lt.mass) total_mass += m;
    const double mass_budget = 1e-6 * std::max(1.0, total_mass);

    std::vector<Check> checks;
    // The assignment oracle gets the system the prices actually describe: the
    // occupied prefix of the corridor, net of the reserved share of any empty
    // tail.  With every location occupied this is the corridor itself.
    CorridorSpec active = rep.inputs.corridor;
    std::vector<double> active_mass = rep.lt.mass;
    const int occupied = last_occupied_location(rep.lt.mass);
    if (occupied > 0 && occupied < active.location_count()) {
        const std::vector<double> eff = effective_capacities(active, rep.lt.mass);
        active.capacities.assign(eff.begin(), eff.begin() + occupied);
        active.free_flow.resize(occupied);
        active.areas.resize(occupied);
        active_mass.resize(occupied);
    }
    const oracle::OracleVerdict lp = oracle::lp_st_so(active, sched, active_mass, dt, &rep.st);
    checks.push_back(make_check("assignment_feasibility", lp.feasibility_residual, mass_budget));
    checks.push_back(make_check("assignment_objective_rel_err", lp.objective_rel_err,
                                std::max(0.2 * dt, 1e-4)));
    checks.push_back(make_check("assignment_dual_dev", lp.max_dual_dev,
                                std::max(5.0 * rep.inputs.late_slope * dt, 1e-3)));

    if (rep.equilibrium_ok) {
        const EquilibriumView view = equilibrium_from_qrp(rep.st);
        const oracle::OracleVerdict sim = oracle::queue_sim(view, dt);
        checks.push_back(make_check("simulated_delay_dev", sim.max_profile_dev, 5.0 * dt));
        checks.push_back(make_check("simulated_equalization_gap", sim.equalization_gap, 5.0 * dt));
        checks.push_back(make_check("simulated_deviation_gain", sim.best_deviation_gain, 5.0 * dt));
        checks.push_back(make_check("simulated_feasibility", sim.feasibility_residual, mass_budget));
    } else {
        checks.push_back(make_check("equilibrium_exists", 1.0, 0.0));  // QRP failed
    }

    const oracle::GapBreakdown gap = oracle::equilibrium_gap(oracle::integrated_state(rep));
    checks.push_back(make_check("gap_conservation", gap.conservation, 1e-9));
    checks.push_back(make_check("gap_queueing", gap.queueing, 1e-9));
    checks.push_back(make_check("gap_time_choice", gap.time_choice, 1e-9));
    checks.push_back(make_check("gap_land_market", gap.land_market, 1e-9));
    checks.push_back(make_check("gap_work_choice", gap.work_choice, 1e-9));

    bool all_pass = true;
    json jchecks = json::array();
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass;
        out << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name << " = " << format_number(c.value)
            << " (budget " << format_number(c.budget) << ")\n";
        jchecks.push_back({{"name", c.name},
                           {"value", table_number(c.value)},
                           {"budget", table_number(c.budget)},
                           {"pass", c.pass}});
    }

    json summary;
    summary["scenario"] = to_string(scenario);
    summary["mode"] = to_string(cfg.mode);
    summary["dt"] = table_number(dt);
    summary["pass"] = all_pass;
    summary["checks"] = jchecks;
    add_seed(summary, seed);
    const std::filesystem::path dir = prepare_dir(out_dir);
    const std::string name = std::string("verify_") + to_string(scenario) + ".json";
    write_file(dir / name, summary.dump(2) + "\n");

    out << (all_pass ? "verification passed" : "verification FAILED") << "; wrote "
        << (dir / name).string() << "\n";
    return all_pass ? 0 : 2;
}

int cmd_paradox_scan(const RunConfig& cfg, const GridSpec& remote_wages, const GridSpec& spacings,
                     const std::string& out_dir, std::optional<long long> seed, std::ostream& out) {
    const std::vector<double> wage_points = remote_wages.points();
    const std::vector<double> spacing_points = spacings.points();
    const std::vector<ParadoxPoint> grid =
        paradox_scan(cfg.inputs, wage_points, spacing_points, cfg.mode);

    std::ostringstream csv;
    csv << "theta_remote,spacing,status,paradox,d_total_cost,error\n";
    int flagged = 0, errored = 0;
    for (const ParadoxPoint& pt : grid) {
        std::string error = pt.error;
        for (char& c : error)
            if (c == ',' || c == '\n' || c == '\r') c = ';';
        csv << format_number(pt.remote_wage) << "," << format_number(pt.spacing) << ","
            << (pt.ok ? "ok" : "invalid") << "," << (pt.paradox ? "true" : "false") << ","
            << (pt.ok ? format_number(pt.d_total_cost) : std::string()) << "," << error << "\n";
        flagged += pt.paradox ? 1 : 0;
        errored += pt.ok ? 0 : 1;
    }
    const std::filesystem::path dir = prepare_dir(out_dir);
    write_file(dir / "paradox_scan.csv", csv.str());

    json summary;
    summary["mode"] = to_string(cfg.mode);
    summary["grid_points"] = static_cast<int>(grid.size());
    summary["paradox_points"] = flagged;
    summary["invalid_points"] = errored;
    summary["remote_wage_grid"] = {{"lo", table_number(remote_wages.lo)},
                                   {"hi", table_number(remote_wages.hi)},
                                   {"n", remote_wages.n}};
    summary["spacing_grid"] = {{"lo", table_number(spacings.lo)},
                               {"hi", table_number(spacings.hi)},
                               {"n", spacings.n}};
    add_seed(summary, seed);
    write_file(dir / "paradox_scan_summary.json", summary.dump(2) + "\n");

    out << "paradox scan: " << grid.size() << " points, " << flagged << " flagged, " << errored
        << " invalid\n";
    out << "wrote " << (dir / "paradox_scan.csv").string() << ", "
        << (dir / "paradox_scan_summary.json").string() << "\n";
    return 0;
}

}  // namespace corridor::cli
