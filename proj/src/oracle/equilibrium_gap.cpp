#include <algorithm>
#include <cmath>
#include <vector>

#include "corridor/oracle/oracle.hpp"

namespace corridor::oracle {

namespace {

double slope_at(const PiecewiseLinearFn& f, double t) {
    const std::vector<double>& xs = f.xs();
    const auto it = std::upper_bound(xs.begin(), xs.end(), t);
    int seg = static_cast<int>(it - xs.begin()) - 1;
    seg = std::clamp(seg, 0, f.segment_count() - 1);
    return f.slope(seg);
}

}  // namespace

double GapBreakdown::max() const {
    return std::max({conservation, queueing, time_choice, land_market, work_choice});
}

IntegratedState integrated_state(const ScenarioReport& report) {
    IntegratedState s;
    s.corridor = report.inputs.corridor;
    s.sched = report.inputs.schedule_for(report.scenario.start_times);
    s.wages = report.inputs.wages;
    s.remote_allowed = report.scenario.remote_allowed;
    s.ratio = report.lt.ratio;
    s.rent = report.lt.rent;
    s.utility = report.lt.utility;
    s.st = report.st;
    return s;
}

GapBreakdown equilibrium_gap(const IntegratedState& state) {
    GapBreakdown gap;
    const CorridorSpec& spec = state.corridor;
    const int n = spec.location_count();
    const std::vector<double> residual = residual_capacities(spec);
    // Queues are judged against the capacity actually on offer: an empty
    // outer tail keeps its share reserved under the fixed-residual pricing.
    const std::vector<double> eff = effective_capacities(spec, state.st.demand);
    const PiecewiseLinearFn env = envelope(state.sched);
    const ShortTermSolution& st = state.st;

    // -- conservation: windows carry exactly the assigned mass, and the mass
    //    is exactly the office share of the population
    for (int i = 0; i < n; ++i) {
        const double carried = st.window[i].measure() * residual[i];
        gap.conservation = std::max(gap.conservation, std::abs(carried - st.demand[i]));
        gap.conservation = std::max(
            gap.conservation, std::abs(st.demand[i] - state.ratio[i] * spec.areas[i]));
    }

    // -- queueing: delays nonnegative, zero off the window, and the bottleneck
    //    serves at capacity exactly while a queue is up
    const EquilibriumView view{st, !st.convex_windows};
    const FlowProfile flows = flow_rates(view);
    for (int i = 1; i <= n; ++i) {
        const PiecewiseLinearFn& w = view.delay(i);
        gap.queueing = std::max(gap.queueing, -w.min_value());
        for (std::size_t k = 0; k < w.xs().size(); ++k) {
            const double t = w.xs()[k];
            if (!st.window[i - 1].contains(t, 1e-12))
                gap.queueing = std::max(gap.queueing, std::abs(w.ys()[k]));
        }

        // exit clock of bottleneck i runs at 1 - Pdot_{i-1}
        std::vector<double> cuts;
        for (int j = i; j <= n; ++j)
            for (const FlowPiece& p : flows.per_location[j - 1]) {
                cuts.push_back(p.t0);
                cuts.push_back(p.t1);
            }
        if (i >= 2)
            for (double x : view.total_delay(i - 1).xs()) cuts.push_back(x);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double len = cuts[c + 1] - cuts[c];
            if (len < 1e-12) continue;
            for (double t : {cuts[c] + 1e-9 * len, 0.5 * (cuts[c] + cuts[c + 1]),
                             cuts[c + 1] - 1e-9 * len}) {
                const double through = flows.through_bottleneck(i, t);
                const double sigma_dot =
                    i >= 2 ? 1.0 - slope_at(view.total_delay(i - 1), t) : 1.0;
                const double service = eff[i - 1] * sigma_dot;
                gap.queueing = std::max(gap.queueing, through - service);  // never above
                if (w(t) > 1e-9)  // at capacity while queued
                    gap.queueing = std::max(gap.queueing, std::abs(through - service));
            }
        }
    }

    // -- time choice: arrival cost (schedule + accumulated delay) equals the
    //    equalized cost on the window and never beats it elsewhere
    for (int i = 1; i <= n; ++i) {
        if (st.demand[i - 1] <= 0.0) continue;
        const PiecewiseLinearFn trip = env + view.total_delay(i);
        for (std::size_t k = 0; k < trip.xs().size(); ++k) {
            const double excess = trip.ys()[k] - st.cost[i - 1];
            gap.time_choice = std::max(gap.time_choice, -excess);
            if (st.window[i - 1].contains(trip.xs()[k], 1e-12))
                gap.time_choice = std::max(gap.time_choice, std::abs(excess));
        }
    }

    // -- land market
    for (int i = 0; i < n; ++i) {
        gap.land_market = std::max(gap.land_market, -state.rent[i]);
        gap.land_market = std::max(gap.land_market, state.ratio[i] - 1.0);
        gap.land_market = std::max(gap.land_market, -state.ratio[i]);
    }
    gap.land_market = std::max(gap.land_market, std::abs(state.rent[n - 1]));

    // -- work choice: no location/office-share pair beats the common utility,
    //    and the chosen share attains it exactly.  An office day costs the
    //    cheapest achievable trip, min_t(envelope + accumulated delay); on an
    //    occupied location that minimum is the equalized cost itself, but on
    //    an empty one the inner queues still stand in the way.
    for (int i = 1; i <= n; ++i) {
        const PiecewiseLinearFn trip = env + view.total_delay(i);
        const double net_office = state.wages.office_wage - trip.min_value() -
                                  cumulative_free_flow(spec, i);
        const auto utility_at = [&](double h) {
            return h * net_office + (1.0 - h) * state.wages.remote_wage - state.rent[i - 1];
        };
        const double chosen = state.remote_allowed ? state.ratio[i - 1] : 1.0;
        gap.work_choice = std::max(gap.work_choice, std::abs(utility_at(chosen) - state.utility));
        if (state.remote_allowed) {
            for (double h : {0.0, 1.0})
                gap.work_choice = std::max(gap.work_choice, utility_at(h) - state.utility);
        } else {
            gap.work_choice = std::max(gap.work_choice, utility_at(1.0) - state.utility);
        }
    }
    return gap;
}

}  // namespace corridor::oracle
