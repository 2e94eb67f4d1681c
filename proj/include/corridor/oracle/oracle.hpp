#pragma once
// Independent brute-force checks of the closed forms.  Nothing here reuses
// the analytic solver's window or price computations: the assignment oracle
// rebuilds the problem as a discrete min-cost flow, the simulator replays the
// equilibrium through literal point queues, and the gap evaluator measures
// how far any candidate state is from satisfying the equilibrium conditions.

#include <vector>

#include "corridor/long_term.hpp"
#include "corridor/scenarios.hpp"
#include "corridor/short_term.hpp"

namespace corridor::oracle {

struct OracleVerdict {
    double objective = 0.0;            // discretized optimum of the within-day problem
    std::vector<double> duals;         // per-location marginal / equalized cost
    double objective_rel_err = 0.0;    // vs analytic, when a reference was given
    double max_dual_dev = 0.0;         // max |dual_i - lambda_i|
    double max_profile_dev = 0.0;      // max |simulated delay - analytic delay|
    double equalization_gap = 0.0;     // realized cost spread over used times
    double best_deviation_gain = 0.0;  // >0 means some arrival time beats lambda_i
    double feasibility_residual = 0.0; // unrouted or unserved mass
};

// Discretizes the horizon into dt slots, routes each location's demand
// through the chain of per-slot capacity arcs, and solves exactly with
// integer-scaled costs (x1e6, documented tolerance budget).  When `analytic`
// is given, fills the deviation fields against it.
OracleVerdict lp_st_so(const CorridorSpec& spec, const ScheduleSpec& sched,
                       const std::vector<double>& demand, double dt,
                       const ShortTermSolution* analytic = nullptr);

// Replays the analytic equilibrium through first-in-first-out point queues
// (Euler stepping, cumulative in/out curves), then measures realized delays,
// cost equalization over used departure times, and the best cost any
// deviating arrival time could achieve.
OracleVerdict queue_sim(const EquilibriumView& view, double dt);

// A full candidate state for the integrated equilibrium; tests perturb the
// fields to confirm the evaluator reacts.
struct IntegratedState {
    CorridorSpec corridor;
    ScheduleSpec sched;
    WageSpec wages;
    bool remote_allowed = false;
    std::vector<double> ratio;   // eta_i
    std::vector<double> rent;    // r_i
    double utility = 0.0;        // rho
    ShortTermSolution st;
};

IntegratedState integrated_state(const ScenarioReport& report);

struct GapBreakdown {
    double conservation = 0.0;   // window capacity vs demand, mass vs eta*A
    double queueing = 0.0;       // delay sign/support and flow-capacity complementarity
    double time_choice = 0.0;    // cost identity on windows, no cheaper arrival off them
    double land_market = 0.0;    // rent signs, outermost rent, ratio bounds
    double work_choice = 0.0;    // utility equalization and no profitable (i, h) move
    double max() const;
};

// Maximum violation across all equilibrium conditions; analytic solutions
// evaluate to ~1e-15, perturbations surface at their own magnitude.
GapBreakdown equilibrium_gap(const IntegratedState& state);

}  // namespace corridor::oracle
