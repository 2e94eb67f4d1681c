#pragma once
// Residential-location / work-mode equilibrium: zone classification, the
// single mixed location where office and remote work pay the same, land
// rents, and the equalized utility.

#include <vector>

#include "corridor/corridor_model.hpp"
#include "corridor/schedule_cost.hpp"

namespace corridor {

enum class ZoneKind { office, mixed, remote };

const char* to_string(ZoneKind z);

struct LongTermSolution {
    bool remote_allowed = false;  // work-ratio set was [0,1] rather than {1}
    CbarMode mode = CbarMode::exact;
    int mixed_zone = 0;            // 1-based location index; 0 = none
    std::vector<double> ratio;     // eta_i, fraction of days commuted
    std::vector<double> mass;      // X_i = eta_i * A_i
    std::vector<double> rent;      // r_i, outermost pinned to 0
    double utility = 0.0;          // rho, common to every worker
    std::vector<ZoneKind> zone;
    bool all_office = false;       // remote work allowed but never competitive
};

// Utility of full-time commuting from location i when X commuters share it:
// office_wage - cbar(X, mu_bar_i) - cumulative free-flow time.
double g_value(const CorridorSpec& spec, const ScheduleSpec& sched, const WageSpec& wages,
               int i, double X, CbarMode mode);

// Smallest i whose fully-occupied commuting utility drops below the remote
// wage; 0 when office work wins everywhere.
int find_mixed_zone(const CorridorSpec& spec, const ScheduleSpec& sched,
                    const WageSpec& wages, CbarMode mode);

// Office-work ratio at the mixed location: the commuter mass X solving
// g_value(i_star, X) = remote_wage, divided by the area.  Clamped to 0 when
// even zero commuting cost cannot reach the remote wage.
double mixed_zone_ratio(const CorridorSpec& spec, const ScheduleSpec& sched,
                        const WageSpec& wages, int i_star, CbarMode mode);

// remote_allowed: utility pins to the remote wage, locations inside the mixed
// zone commute daily, beyond it nobody commutes.  Otherwise everyone commutes
// and utility equals the outermost location's g-value.  Rents make utilities
// equal everywhere; a negative rent is an error (inputs outside the model's
// regularity), never clamped.
LongTermSolution solve_long_term(const CorridorSpec& spec, const ScheduleSpec& sched,
                                 const WageSpec& wages, bool remote_allowed, CbarMode mode);

}  // namespace corridor
