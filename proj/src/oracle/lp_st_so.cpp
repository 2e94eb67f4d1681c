#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "corridor/oracle/min_cost_flow.hpp"
#include "corridor/oracle/oracle.hpp"

namespace corridor::oracle {

namespace {
constexpr double kMassScale = 1e6;
constexpr double kCostScale = 1e6;

// Deliberately re-derived from the raw slopes rather than calling the
// library's envelope: the oracle must not inherit its bugs.
double raw_schedule_cost(const ScheduleSpec& sched, double t) {
    double best = std::numeric_limits<double>::infinity();
    for (double tk : sched.preferred_times) {
        const double c =
            t <= tk ? sched.early_slope * (tk - t) : sched.late_slope * (t - tk);
        best = std::min(best, c);
    }
    return best;
}
}  // namespace

OracleVerdict lp_st_so(const CorridorSpec& spec, const ScheduleSpec& sched,
                       const std::vector<double>& demand, double dt,
                       const ShortTermSolution* analytic) {
    validate(spec);
    validate(sched);
    if (dt <= 0) throw validation_error("slot width must be positive");
    const int n = spec.location_count();
    if (static_cast<int>(demand.size()) != n)
        throw validation_error("demand vector length must match location count");

    const double lo = sched.horizon_lo, hi = sched.horizon_hi;
    const int slots = std::max(1, static_cast<int>(std::ceil((hi - lo) / dt - 1e-9)));

    // Nodes: chain node per (location, slot), then sink, then one source per
    // location, then the supersource.  A unit entering at level i must cross
    // the slot's capacity arcs for bottlenecks i, i-1, ..., 1: exactly the
    // nested corridor constraint.
    const auto chain = [&](int i, int s) { return (i - 1) * slots + s; };
    const int sink = n * slots;
    const auto source = [&](int i) { return n * slots + i; };  // i is 1-based
    const int supersource = n * slots + n + 1;
    MinCostFlow mcf(n * slots + n + 2);

    std::int64_t total_demand = 0;
    std::vector<std::int64_t> supply(n);
    for (int i = 1; i <= n; ++i) {
        supply[i - 1] = std::llround(demand[i - 1] * kMassScale);
        total_demand += supply[i - 1];
        if (supply[i - 1] > 0) mcf.add_edge(supersource, source(i), supply[i - 1], 0);
    }
    for (int s = 0; s < slots; ++s) {
        const double t_mid = lo + (s + 0.5) * dt;
        const std::int64_t entry_cost =
            std::llround(raw_schedule_cost(sched, t_mid) * kCostScale);
        for (int i = 1; i <= n; ++i) {
            const std::int64_t cap = std::llround(spec.capacities[i - 1] * dt * kMassScale);
            mcf.add_edge(chain(i, s), i == 1 ? sink : chain(i - 1, s), cap, 0);
            if (supply[i - 1] > 0)
                mcf.add_edge(source(i), chain(i, s), supply[i - 1], entry_cost);
        }
    }

    const auto [flow, cost] = mcf.solve(supersource, sink, total_demand);
    OracleVerdict v;
    v.objective = static_cast<double>(cost) / (kMassScale * kCostScale);
    v.feasibility_residual = static_cast<double>(total_demand - flow) / kMassScale;

    const std::vector<std::int64_t> res = mcf.residual_distances_to(sink);
    v.duals.assign(n, 0.0);
    for (int i = 1; i <= n; ++i)
        if (supply[i - 1] > 0 && res[source(i)] != MinCostFlow::distance_unreachable())
            v.duals[i - 1] = static_cast<double>(res[source(i)]) / kCostScale;

    if (analytic != nullptr) {
        const double reference = so_schedule_cost(*analytic);
        v.objective_rel_err = std::abs(v.objective - reference) / std::max(1.0, std::abs(reference));
        for (int i = 0; i < n; ++i)
            if (supply[i] > 0)
                v.max_dual_dev = std::max(v.max_dual_dev, std::abs(v.duals[i] - analytic->cost[i]));
    }
    return v;
}

}  // namespace corridor::oracle
