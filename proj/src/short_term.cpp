#include "corridor/short_term.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace corridor {

QrpCheck check_qrp(const CorridorSpec& spec, const ScheduleSpec& sched) {
    const int n = spec.location_count();
    QrpCheck out;
    out.margins.resize(n);
    out.ok = sched.early_slope < 1.0;
    for (int i = 0; i < n; ++i) {
        if (i + 1 < n) {
            const double bound = (spec.capacities[i] - spec.capacities[i + 1]) / spec.capacities[i + 1];
            out.margins[i] = bound - sched.late_slope;
            if (!(out.margins[i] > 0.0)) out.ok = false;
        } else {
            out.margins[i] = std::numeric_limits<double>::infinity();
        }
    }
    return out;
}

namespace {

// The bottleneck decomposition prices location i at cbar(X_i, mu_bar_i); it
// is valid only when those equalized costs rise with distance (zero-demand
// locations past the last occupied one are exempt).
void check_cost_ordering(const std::vector<double>& demand, const std::vector<double>& cost) {
    int last_occupied = 0;
    for (std::size_t i = 0; i < demand.size(); ++i)
        if (demand[i] > 0.0) last_occupied = static_cast<int>(i) + 1;
    bool seen_occupied = false;
    double prev_cost = -std::numeric_limits<double>::infinity();
    int prev_index = 0;
    for (int i = 1; i <= last_occupied; ++i) {
        if (demand[i - 1] == 0.0) {
            if (seen_occupied) {
                std::ostringstream msg;
                msg << "equalized cost ordering violated: location " << i
                    << " is empty below occupied location " << last_occupied;
                throw solve_error(msg.str());
            }
            continue;
        }
        if (seen_occupied && !(cost[i - 1] > prev_cost)) {
            std::ostringstream msg;
            msg << "equalized cost ordering violated between locations " << prev_index
                << " and " << i << " (" << prev_cost << " vs " << cost[i - 1] << ")";
            throw solve_error(msg.str());
        }
        seen_occupied = true;
        prev_cost = cost[i - 1];
        prev_index = i;
    }
}

}  // namespace

ShortTermSolution solve_st_so(const CorridorSpec& spec, const ScheduleSpec& sched,
                              const std::vector<double>& demand, CbarMode mode) {
    validate(spec);
    validate(sched);
    const int n = spec.location_count();
    if (static_cast<int>(demand.size()) != n)
        throw validation_error("demand vector length must match the location count");
    for (double x : demand)
        if (x < 0.0) throw validation_error("negative demand mass");

    ShortTermSolution so;
    so.corridor = spec;
    so.sched = sched;
    so.mode = mode;
    so.demand = demand;
    so.qrp = check_qrp(spec, sched);

    const std::vector<double> mu_bar = residual_capacities(spec);
    so.cost.resize(n);
    for (int i = 0; i < n; ++i)
        so.cost[i] = demand[i] > 0.0 ? cbar(sched, demand[i], mu_bar[i], mode) : 0.0;
    check_cost_ordering(so.demand, so.cost);

    const PiecewiseLinearFn env = envelope(sched);
    so.window.resize(n);
    so.cumulative_price.reserve(n);
    so.bottleneck_price.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (demand[i] > 0.0) {
            so.window[i] = level_set(sched, so.cost[i]);
            if (so.window[i].size() > 1) so.convex_windows = false;
        }
        // An empty location's bottleneck holds no queue, but its commuters
        // would still cross every inner queue: cumulative delay carries over.
        so.cumulative_price.push_back(demand[i] > 0.0 || i == 0
                                          ? (so.cost[i] - env).clamp_min(0.0)
                                          : so.cumulative_price[i - 1]);
        so.bottleneck_price.push_back(
            i == 0 ? so.cumulative_price[0]
                   : so.cumulative_price[i] - so.cumulative_price[i - 1]);
    }
    return so;
}

int last_occupied_location(const std::vector<double>& demand) {
    int m = 0;
    for (std::size_t i = 0; i < demand.size(); ++i)
        if (demand[i] > 0.0) m = static_cast<int>(i) + 1;
    return m;
}

std::vector<double> effective_capacities(const CorridorSpec& spec,
                                         const std::vector<double>& demand) {
    const int n = spec.location_count();
    const int m = last_occupied_location(demand);
    const double reserved = m < n ? spec.capacities[m] : 0.0;
    std::vector<double> eff = spec.capacities;
    for (int i = 0; i < m; ++i) eff[i] -= reserved;
    return eff;
}

EquilibriumView equilibrium_from_qrp(const ShortTermSolution& so) {
    if (!so.qrp.ok)
        throw solve_error(
            "queue replacement condition fails: optimum prices are not equilibrium delays here");
    // Departure-time consistency: accumulated delay may never eat a full unit
    // of arrival time, or first-in-first-out ordering would break.
    for (const PiecewiseLinearFn& total : so.cumulative_price)
        for (int s = 0; s < total.segment_count(); ++s)
            if (!(1.0 - total.slope(s) > 1e-12))
                throw solve_error("delay slope reaches 1: arrival order would invert");
    return EquilibriumView{so, !so.convex_windows};
}

FlowProfile flow_rates(const EquilibriumView& view) {
    const ShortTermSolution& so = view.so;
    const int n = so.corridor.location_count();
    const int m = last_occupied_location(so.demand);
    const std::vector<double> mu_bar = residual_capacities(so.corridor);
    // Net of the reserved tail share; the residuals eff_i - eff_{i+1} that
    // drive the inner-branch rates are unchanged by the subtraction.
    const std::vector<double> eff = effective_capacities(so.corridor, so.demand);
    FlowProfile profile;
    profile.per_location.resize(n);

    for (int i = 1; i <= m; ++i) {
        if (so.demand[i - 1] == 0.0) continue;
        const IntervalSet& outer = so.window[i - 1];
        // Elementary grid: window edges of T_i and T_{i-1} plus every point
        // where the active target or its cost slope changes.
        std::vector<double> cuts;
        for (const Interval& p : outer.parts()) {
            cuts.push_back(p.lo);
            cuts.push_back(p.hi);
        }
        if (i >= 2)
            for (const Interval& p : so.window[i - 2].parts()) {
                cuts.push_back(p.lo);
                cuts.push_back(p.hi);
            }
        for (const Interval& w : minimizer_windows(so.sched)) cuts.push_back(w.hi);
        for (double tk : so.sched.preferred_times) cuts.push_back(tk);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   cuts.end());

        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            const double a = cuts[s], b = cuts[s + 1];
            const double mid = 0.5 * (a + b);
            if (!outer.contains(mid)) continue;
            const int k = minimizer_index(so.sched, mid);
            const double cdot = mid < so.sched.preferred_times[k - 1] ? -so.sched.early_slope
                                                                      : so.sched.late_slope;
            const bool inner = i >= 2 && so.window[i - 2].contains(mid);
            const double mu_next = i < m ? eff[i] : 0.0;
            const double rate =
                inner ? mu_bar[i - 1] * (1.0 + cdot) : eff[i - 1] - mu_next * (1.0 + cdot);
            if (rate < -1e-12) {
                std::ostringstream msg;
                msg << "negative arrival flow " << rate << " at location " << i
                    << ", t=" << mid << ": queue replacement precondition breached";
                throw solve_error(msg.str());
            }
            profile.per_location[i - 1].push_back({k, a, b, rate, rate});
        }
    }
    return profile;
}

double FlowProfile::location_mass(int i) const {
    double total = 0.0;
    for (const FlowPiece& p : per_location[i - 1])
        total += 0.5 * (p.f0 + p.f1) * (p.t1 - p.t0);
    return total;
}

double FlowProfile::rate_at(int i, double t) const {
    double total = 0.0;
    for (const FlowPiece& p : per_location[i - 1]) {
        if (t < p.t0 || t > p.t1) continue;
        const double w = (t - p.t0) / (p.t1 - p.t0);
        total += p.f0 + w * (p.f1 - p.f0);
    }
    return total;
}

double FlowProfile::through_bottleneck(int i, double t) const {
    double total = 0.0;
    for (int j = i; j <= static_cast<int>(per_location.size()); ++j) total += rate_at(j, t);
    return total;
}

double total_commuting_cost(const ShortTermSolution& so) {
    double total = 0.0;
    for (std::size_t i = 0; i < so.demand.size(); ++i) total += so.cost[i] * so.demand[i];
    return total;
}

double so_schedule_cost(const ShortTermSolution& so) {
    const PiecewiseLinearFn env = envelope(so.sched);
    const std::vector<double> mu_bar = residual_capacities(so.corridor);
    double total = 0.0;
    for (std::size_t i = 0; i < so.window.size(); ++i)
        total += mu_bar[i] * env.integral_over(so.window[i]);
    return total;
}

double so_queue_cost(const ShortTermSolution& so) {
    const std::vector<double> mu_bar = residual_capacities(so.corridor);
    double total = 0.0;
    for (std::size_t i = 0; i < so.window.size(); ++i)
        total += mu_bar[i] * so.cumulative_price[i].integral_over(so.window[i]);
    return total;
}

}  // namespace corridor
