#pragma once
// Closed-form solution of the within-day system optimum via bottleneck
// decomposition, and its reading as the no-toll equilibrium: whenever the
// queue replacement condition holds, equilibrium queueing delays coincide
// with the optimum's congestion prices.

#include <vector>

#include "corridor/corridor_model.hpp"
#include "corridor/schedule_cost.hpp"

namespace corridor {

struct QrpCheck {
    bool ok = false;
    // (mu_i - mu_{i+1})/mu_{i+1} - late_slope per bottleneck; +inf at the
    // outermost one, which feeds no tighter bottleneck.  Negative => fails.
    std::vector<double> margins;
};

// Queue replacement condition: early_slope < 1 and, at every bottleneck that
// feeds a tighter one, late_slope < (mu_i - mu_{i+1})/mu_{i+1}.
QrpCheck check_qrp(const CorridorSpec& spec, const ScheduleSpec& sched);

struct ShortTermSolution {
    CorridorSpec corridor;
    ScheduleSpec sched;
    CbarMode mode = CbarMode::exact;
    std::vector<double> demand;            // X_i
    std::vector<double> cost;              // lambda_i, free-flow time excluded;
                                           // a worker commuting a fraction h of
                                           // days bears h * lambda_i per day
    std::vector<IntervalSet> window;       // T_i, nested across occupied locations
    std::vector<PiecewiseLinearFn> cumulative_price;  // P_i = max(0, lambda_i - envelope);
                                                      // an empty location adds no queue of
                                                      // its own, so there P_i = P_{i-1}
    std::vector<PiecewiseLinearFn> bottleneck_price;  // p_i = P_i - P_{i-1}, P_0 = 0
    QrpCheck qrp;
    bool convex_windows = true;  // false when some occupied T_i splits in two
};

// lambda_i = cbar(X_i, mu_i - mu_{i+1}); windows are envelope level sets.
// Throws solve_error when the resulting lambda ordering is incompatible with
// the decomposition (equalized costs must rise with distance).
ShortTermSolution solve_st_so(const CorridorSpec& spec, const ScheduleSpec& sched,
                              const std::vector<double>& demand, CbarMode mode);

// Equilibrium reading of the optimum: queue delay at bottleneck i, as a
// function of final arrival time, equals the optimum price p_i.
struct EquilibriumView {
    ShortTermSolution so;
    bool window_warning = false;  // nonconvex windows: the construction's
                                  // premise fails, oracle checks it empirically
    const PiecewiseLinearFn& delay(int i) const { return so.bottleneck_price[i - 1]; }
    // Total delay a location-i commuter accumulates, by final arrival time.
    const PiecewiseLinearFn& total_delay(int i) const { return so.cumulative_price[i - 1]; }
};

// Refuses (solve_error) when the queue replacement condition fails.
EquilibriumView equilibrium_from_qrp(const ShortTermSolution& so);

// Index of the last location with positive demand (1-based; 0 when all zero).
int last_occupied_location(const std::vector<double>& demand);

// Capacity each bottleneck actually offers to the commuting locations.  The
// pricing rule charges location i against the residual mu_i - mu_{i+1} whether
// or not the outer tail commutes, i.e. the tail's share mu_{m+1} stays
// reserved (m = last occupied location).  The constructed delays are
// self-sustaining only net of that share: on the raw capacities the unused
// slack would let the inner queues drain.  Entries past m keep mu_i (they
// carry no flow either way).
std::vector<double> effective_capacities(const CorridorSpec& spec,
                                         const std::vector<double>& demand);

// Arrival flow rate at the destination for commuters of location i targeting
// k, linear on each piece; support is T_i intersected with target-k's window.
struct FlowPiece {
    int k = 0;  // 1-based target index
    double t0 = 0.0, t1 = 0.0;
    double f0 = 0.0, f1 = 0.0;  // rate at t0 and t1 (linear between)
};

struct FlowProfile {
    std::vector<std::vector<FlowPiece>> per_location;  // index i-1

    double location_mass(int i) const;       // integral of all location-i pieces
    double rate_at(int i, double t) const;   // 0 off-support
    // Total flow through bottleneck i at final-arrival time t: all locations
    // j >= i contribute (they pass bottleneck i on the way in).
    double through_bottleneck(int i, double t) const;
};

// Piecewise rates on the effective capacities: mu_bar_i * (1 + cdot) inside
// the next-inner window, and eff_i - eff_{i+1} * (1 + cdot) on the outer ring
// T_i \ T_{i-1}; cdot is the active target's cost slope.  Positivity is
// guaranteed by the queue replacement condition and re-checked here.
FlowProfile flow_rates(const EquilibriumView& view);

double total_commuting_cost(const ShortTermSolution& so);  // sum lambda_i X_i

// Objective of the system optimum: sum_i mu_bar_i * integral of the envelope
// over T_i (schedule-delay part of the total cost).
double so_schedule_cost(const ShortTermSolution& so);

// Price part: sum_i mu_bar_i * integral of P_i over T_i.  In equilibrium this
// is the total queueing-delay cost.
double so_queue_cost(const ShortTermSolution& so);

}  // namespace corridor
