#include "corridor/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace corridor {

Scenario scenario_from_label(ScenarioLabel label) {
    switch (label) {
        case ScenarioLabel::ns: return {label, false, 1};
        case ScenarioLabel::swh: return {label, false, 2};
        case ScenarioLabel::tlc: return {label, true, 1};
        case ScenarioLabel::cs: return {label, true, 2};
    }
    throw validation_error("unknown scenario label");
}

const char* to_string(ScenarioLabel label) {
    switch (label) {
        case ScenarioLabel::ns: return "ns";
        case ScenarioLabel::swh: return "swh";
        case ScenarioLabel::tlc: return "tlc";
        case ScenarioLabel::cs: return "cs";
    }
    return "?";
}

std::optional<ScenarioLabel> parse_scenario(std::string_view text) {
    std::string low(text);
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (low == "ns") return ScenarioLabel::ns;
    if (low == "swh") return ScenarioLabel::swh;
    if (low == "tlc") return ScenarioLabel::tlc;
    if (low == "cs") return ScenarioLabel::cs;
    return std::nullopt;
}

ScheduleSpec ScenarioInputs::schedule_for(int start_times) const {
    ScheduleSpec sched;
    sched.early_slope = early_slope;
    sched.late_slope = late_slope;
    sched.horizon_lo = horizon_lo;
    sched.horizon_hi = horizon_hi;
    if (start_times == 1)
        sched.preferred_times = {t_single};
    else if (start_times == 2)
        sched.preferred_times = {t_pair_lo, t_pair_hi};
    else
        throw validation_error("scenarios use one or two start times");
    return sched;
}

const ScenarioInputs& validate(const ScenarioInputs& in) {
    validate(in.corridor);
    validate(in.wages);
    validate(in.schedule_for(1));
    validate(in.schedule_for(2));
    return in;
}

ScenarioReport run_scenario(const ScenarioInputs& in, ScenarioLabel label, CbarMode mode) {
    validate(in);
    ScenarioReport rep;
    rep.scenario = scenario_from_label(label);
    rep.mode = mode;
    rep.inputs = in;
    const ScheduleSpec sched = in.schedule_for(rep.scenario.start_times);

    rep.lt = solve_long_term(in.corridor, sched, in.wages, rep.scenario.remote_allowed, mode);
    rep.st = solve_st_so(in.corridor, sched, rep.lt.mass, mode);
    rep.total_cost = total_commuting_cost(rep.st);
    rep.utility = rep.lt.utility;
    rep.window_warning = !rep.st.convex_windows;
    if (rep.st.qrp.ok) {
        equilibrium_from_qrp(rep.st);  // validates delay-slope consistency
        rep.equilibrium_ok = true;
    }

    // Long- and short-term sides must agree: at every occupied location the
    // worker's utility at the equilibrium ratio reproduces rho.
    for (int i = 1; i <= in.corridor.location_count(); ++i) {
        const double eta = rep.lt.ratio[i - 1];
        if (eta <= 0.0 && rep.lt.mass[i - 1] <= 0.0 && rep.scenario.remote_allowed) {
            // remote location: utility is the remote wage minus rent
            const double u = in.wages.remote_wage - rep.lt.rent[i - 1];
            if (std::abs(u - rep.utility) > 1e-9)
                throw solve_error("internal: remote-zone utility fails to equal rho");
            continue;
        }
        const double u = eta * (in.wages.office_wage - rep.st.cost[i - 1] -
                                cumulative_free_flow(in.corridor, i)) +
                         (1.0 - eta) * in.wages.remote_wage - rep.lt.rent[i - 1];
        const double u_ref = rep.scenario.remote_allowed
                                 ? u
                                 : in.wages.office_wage - rep.st.cost[i - 1] -
                                       cumulative_free_flow(in.corridor, i) - rep.lt.rent[i - 1];
        if (std::abs(u_ref - rep.utility) > 1e-9)
            throw solve_error("internal: short- and long-term solutions disagree on utility");
    }
    return rep;
}

namespace {

constexpr double kTol = 1e-9;

bool same_vector(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void require_same_base(const ScenarioReport& a, const ScenarioReport& b) {
    const ScenarioInputs& x = a.inputs;
    const ScenarioInputs& y = b.inputs;
    const bool same = same_vector(x.corridor.capacities, y.corridor.capacities) &&
                      same_vector(x.corridor.free_flow, y.corridor.free_flow) &&
                      same_vector(x.corridor.areas, y.corridor.areas) &&
                      x.wages.office_wage == y.wages.office_wage &&
                      x.wages.remote_wage == y.wages.remote_wage &&
                      x.early_slope == y.early_slope && x.late_slope == y.late_slope &&
                      x.horizon_lo == y.horizon_lo && x.horizon_hi == y.horizon_hi &&
                      x.t_single == y.t_single && x.t_pair_lo == y.t_pair_lo &&
                      x.t_pair_hi == y.t_pair_hi && a.mode == b.mode;
    if (!same)
        throw validation_error("comparison requires both scenarios to share one configuration");
}

struct VerdictSink {
    std::vector<Verdict>& out;
    void operator()(std::string claim, std::string expected, double observed, bool pass) const {
        out.push_back({std::move(claim), std::move(expected), observed, pass});
    }
};

std::string at_loc(const char* stem, int i) {
    std::ostringstream s;
    s << stem << "[" << i << "]";
    return s.str();
}

// Canonical directional claims; (a, b) is the canonical orientation.
void emit_verdicts(const ScenarioReport& a, const ScenarioReport& b, std::vector<Verdict>& out) {
    VerdictSink emit{out};
    const int n = a.inputs.corridor.location_count();
    const double d_delta =
        a.inputs.pair_spacing() * a.inputs.schedule_for(1).delta();  // spacing * delta
    std::vector<double> dc(n), dr(n);
    for (int i = 0; i < n; ++i) {
        dc[i] = b.st.cost[i] - a.st.cost[i];
        dr[i] = b.lt.rent[i] - a.lt.rent[i];
    }
    const double du = b.utility - a.utility;
    const double dtc = b.total_cost - a.total_cost;
    const ScenarioLabel la = a.scenario.label, lb = b.scenario.label;

    if (la == lb) {
        for (int i = 1; i <= n; ++i) {
            emit(at_loc("cost_identical", i), "delta == 0", dc[i - 1], std::abs(dc[i - 1]) <= kTol);
            emit(at_loc("rent_identical", i), "delta == 0", dr[i - 1], std::abs(dr[i - 1]) <= kTol);
        }
        emit("utility_identical", "delta == 0", du, std::abs(du) <= kTol);
        emit("total_cost_identical", "delta == 0", dtc, std::abs(dtc) <= kTol);
        return;
    }

    if (la == ScenarioLabel::ns && lb == ScenarioLabel::swh) {
        for (int i = 1; i <= n; ++i) {
            emit(at_loc("stagger_cost_drop", i), "delta == -spacing*delta", dc[i - 1],
                 std::abs(dc[i - 1] + d_delta) <= kTol);
            emit(at_loc("stagger_rent_unchanged", i), "delta == 0", dr[i - 1],
                 std::abs(dr[i - 1]) <= kTol);
        }
        emit("utility_rises", "delta > 0", du, du > kTol);
        emit("total_cost_falls", "delta < 0", dtc, dtc < -kTol);
        return;
    }

    const bool remote_vs_base = (la == ScenarioLabel::ns && lb == ScenarioLabel::tlc) ||
                                (la == ScenarioLabel::swh && lb == ScenarioLabel::cs);
    if (remote_vs_base) {
        const int i_star = b.lt.mixed_zone;
        if (i_star == 0) {
            for (int i = 1; i <= n; ++i) {
                emit(at_loc("all_office_cost_unchanged", i), "delta == 0", dc[i - 1],
                     std::abs(dc[i - 1]) <= kTol);
                emit(at_loc("all_office_rent_unchanged", i), "delta == 0", dr[i - 1],
                     std::abs(dr[i - 1]) <= kTol);
            }
            emit("all_office_utility_unchanged", "delta == 0", du, std::abs(du) <= kTol);
            emit("all_office_total_cost_unchanged", "delta == 0", dtc, std::abs(dtc) <= kTol);
            return;
        }
        for (int i = 1; i <= n; ++i) {
            if (i < i_star) {
                emit(at_loc("office_cost_unchanged", i), "delta == 0", dc[i - 1],
                     std::abs(dc[i - 1]) <= kTol);
                emit(at_loc("office_rent_falls", i), "delta < 0", dr[i - 1], dr[i - 1] < -kTol);
            } else if (i == i_star) {
                emit(at_loc("mixed_cost_falls", i), "delta < 0", dc[i - 1], dc[i - 1] < -kTol);
                emit(at_loc("mixed_rent_not_higher", i), "delta <= 0", dr[i - 1],
                     dr[i - 1] <= kTol);
            } else {
                emit(at_loc("remote_cost_falls", i), "delta < 0", dc[i - 1], dc[i - 1] < -kTol);
                emit(at_loc("remote_rent_not_higher", i), "delta <= 0", dr[i - 1],
                     dr[i - 1] <= kTol);
            }
        }
        emit("utility_rises", "delta > 0", du, du > kTol);
        emit("total_cost_falls", "delta < 0", dtc, dtc < -kTol);
        return;
    }

    if (la == ScenarioLabel::tlc && lb == ScenarioLabel::cs) {
        const int i_t = a.lt.mixed_zone;
        const int i_c = b.lt.mixed_zone == 0 ? n + 1 : b.lt.mixed_zone;
        if (i_t == 0) {
            // Remote work never competitive: both schemes collapse to their
            // all-commuting counterparts, so staggering drives every delta.
            for (int i = 1; i <= n; ++i) {
                emit(at_loc("all_office_cost_drop", i), "delta == -spacing*delta", dc[i - 1],
                     std::abs(dc[i - 1] + d_delta) <= kTol);
                emit(at_loc("all_office_rent_unchanged", i), "delta == 0", dr[i - 1],
                     std::abs(dr[i - 1]) <= kTol);
            }
            emit("all_office_utility_rises", "delta > 0", du, du > kTol);
            emit("all_office_total_cost_falls", "delta < 0", dtc, dtc < -kTol);
            return;
        }
        for (int i = 1; i <= n; ++i) {
            if (i < i_t) {
                emit(at_loc("office_both_cost_drop", i), "delta == -spacing*delta", dc[i - 1],
                     std::abs(dc[i - 1] + d_delta) <= kTol);
                emit(at_loc("office_both_rent_rise", i), "delta == +spacing*delta", dr[i - 1],
                     std::abs(dr[i - 1] - d_delta) <= kTol);
            } else if (i == i_t && i < i_c) {
                emit(at_loc("mixed_to_office_cost_not_higher", i), "delta <= 0", dc[i - 1],
                     dc[i - 1] <= kTol);
                emit(at_loc("mixed_to_office_rent_not_lower", i), "delta >= 0", dr[i - 1],
                     dr[i - 1] >= -kTol);
            } else if (i == i_t && i == i_c) {
                emit(at_loc("mixed_both_cost_unchanged", i), "delta == 0", dc[i - 1],
                     std::abs(dc[i - 1]) <= kTol);
                emit(at_loc("mixed_both_rent_unchanged", i), "delta == 0", dr[i - 1],
                     std::abs(dr[i - 1]) <= kTol);
            } else if (i > i_t && i < i_c) {
                emit(at_loc("reactivated_cost_rises", i), "delta > 0", dc[i - 1],
                     dc[i - 1] > kTol);
                emit(at_loc("reactivated_rent_not_lower", i), "delta >= 0", dr[i - 1],
                     dr[i - 1] >= -kTol);
            } else if (i == i_c) {
                emit(at_loc("remote_to_mixed_cost_not_lower", i), "delta >= 0", dc[i - 1],
                     dc[i - 1] >= -kTol);
                emit(at_loc("remote_to_mixed_rent_unchanged", i), "delta == 0", dr[i - 1],
                     std::abs(dr[i - 1]) <= kTol);
            } else {
                emit(at_loc("remote_both_cost_unchanged", i), "delta == 0", dc[i - 1],
                     std::abs(dc[i - 1]) <= kTol);
                emit(at_loc("remote_both_rent_unchanged", i), "delta == 0", dr[i - 1],
                     std::abs(dr[i - 1]) <= kTol);
            }
        }
        emit("utility_equal", "delta == 0", du, std::abs(du) <= kTol);
        return;
    }

    if (la == ScenarioLabel::ns && lb == ScenarioLabel::cs) {
        emit("utility_rises", "delta > 0", du, du > kTol);
        emit("total_cost_falls", "delta < 0", dtc, dtc < -kTol);
        return;
    }
    // swh vs tlc: no general direction holds; deltas only.
}

bool canonical_order(ScenarioLabel a, ScenarioLabel b) {
    auto rank = [](ScenarioLabel l) {
        switch (l) {
            case ScenarioLabel::ns: return 0;
            case ScenarioLabel::swh: return 1;
            case ScenarioLabel::tlc: return 2;
            case ScenarioLabel::cs: return 3;
        }
        return 0;
    };
    return rank(a) <= rank(b);
}

}  // namespace

ComparisonReport compare(const ScenarioReport& a, const ScenarioReport& b) {
    require_same_base(a, b);
    ComparisonReport cmp;
    cmp.a = a.scenario.label;
    cmp.b = b.scenario.label;
    const int n = a.inputs.corridor.location_count();
    cmp.d_cost.resize(n);
    cmp.d_rent.resize(n);
    for (int i = 0; i < n; ++i) {
        cmp.d_cost[i] = b.st.cost[i] - a.st.cost[i];
        cmp.d_rent[i] = b.lt.rent[i] - a.lt.rent[i];
    }
    cmp.d_utility = b.utility - a.utility;
    cmp.d_total_cost = b.total_cost - a.total_cost;

    const ScenarioReport& first = canonical_order(cmp.a, cmp.b) ? a : b;
    const ScenarioReport& second = canonical_order(cmp.a, cmp.b) ? b : a;
    std::ostringstream orient;
    orient << to_string(first.scenario.label) << " -> " << to_string(second.scenario.label);
    cmp.orientation = orient.str();
    emit_verdicts(first, second, cmp.verdicts);

    // Induced-commuting paradox: staggering on top of telecommuting leaves
    // utility untouched but total commuting cost strictly rises.
    const bool tlc_cs_pair = first.scenario.label == ScenarioLabel::tlc &&
                             second.scenario.label == ScenarioLabel::cs;
    cmp.paradox = tlc_cs_pair && std::abs(second.utility - first.utility) <= kTol &&
                  second.total_cost - first.total_cost > kTol;
    return cmp;
}

std::vector<ParadoxPoint> paradox_scan(const ScenarioInputs& base,
                                       const std::vector<double>& remote_wages,
                                       const std::vector<double>& spacings, CbarMode mode) {
    std::vector<ParadoxPoint> grid;
    grid.reserve(remote_wages.size() * spacings.size());
    for (double wr : remote_wages) {
        for (double d : spacings) {
            ParadoxPoint pt;
            pt.remote_wage = wr;
            pt.spacing = d;
            try {
                ScenarioInputs in = base;
                in.wages.remote_wage = wr;
                in.t_pair_lo = base.t_single - 0.5 * d;
                in.t_pair_hi = base.t_single + 0.5 * d;
                validate(in);
                const ScenarioReport rt = run_scenario(in, ScenarioLabel::tlc, mode);
                const ScenarioReport rc = run_scenario(in, ScenarioLabel::cs, mode);
                const ComparisonReport cmp = compare(rt, rc);
                pt.ok = true;
                pt.paradox = cmp.paradox;
                pt.d_total_cost = cmp.d_total_cost;
            } catch (const std::exception& e) {
                pt.ok = false;
                pt.error = e.what();
            }
            grid.push_back(pt);
        }
    }
    return grid;
}

}  // namespace corridor
