#include "corridor/long_term.hpp"

#include <cmath>
#include <sstream>

namespace corridor {

const char* to_string(ZoneKind z) {
    switch (z) {
        case ZoneKind::office: return "office";
        case ZoneKind::mixed: return "mixed";
        case ZoneKind::remote: return "remote";
    }
    return "?";
}

double g_value(const CorridorSpec& spec, const ScheduleSpec& sched, const WageSpec& wages,
               int i, double X, CbarMode mode) {
    if (X < 0.0) throw validation_error("negative commuter mass");
    if (i < 1 || i > spec.location_count()) throw validation_error("location index out of range");
    const std::vector<double> mu_bar = residual_capacities(spec);
    return wages.office_wage - cbar(sched, X, mu_bar.at(i - 1), mode) -
           cumulative_free_flow(spec, i);
}

int find_mixed_zone(const CorridorSpec& spec, const ScheduleSpec& sched, const WageSpec& wages,
                    CbarMode mode) {
    for (int i = 1; i <= spec.location_count(); ++i)
        if (g_value(spec, sched, wages, i, spec.areas[i - 1], mode) < wages.remote_wage)
            return i;
    return 0;
}

double mixed_zone_ratio(const CorridorSpec& spec, const ScheduleSpec& sched,
                        const WageSpec& wages, int i_star, CbarMode mode) {
    if (i_star < 1 || i_star > spec.location_count())
        throw validation_error("mixed zone index out of range");
    // Commuting cost that makes office work pay exactly the remote wage.
    const double target =
        wages.office_wage - wages.remote_wage - cumulative_free_flow(spec, i_star);
    if (target <= 0.0) return 0.0;
    const double mu = residual_capacities(spec)[i_star - 1];
    double mass = 0.0;
    if (mode == CbarMode::exact) {
        mass = level_set(sched, target).measure() * mu;
    } else {
        if (sched.count() > 2)
            throw validation_error("merged closed form is defined for one or two preferred times");
        const double d = sched.count() == 2 ? sched.spacing(1) : 0.0;
        mass = mu * (target / sched.delta() + d * (sched.count() - 1));
    }
    return std::max(0.0, std::min(1.0, mass / spec.areas[i_star - 1]));
}

namespace {

double checked_rent(double value, int i) {
    if (value < -1e-9) {
        std::ostringstream msg;
        msg << "negative land rent " << value << " at location " << i
            << ": inputs violate the model's regularity";
        throw solve_error(msg.str());
    }
    return std::max(0.0, value);
}

}  // namespace

LongTermSolution solve_long_term(const CorridorSpec& spec, const ScheduleSpec& sched,
                                 const WageSpec& wages, bool remote_allowed, CbarMode mode) {
    validate(spec);
    validate(sched);
    validate(wages);
    const int n = spec.location_count();

    LongTermSolution lt;
    lt.remote_allowed = remote_allowed;
    lt.mode = mode;
    lt.ratio.assign(n, 1.0);
    lt.mass.resize(n);
    lt.rent.assign(n, 0.0);
    lt.zone.assign(n, ZoneKind::office);

    const int i_star = remote_allowed ? find_mixed_zone(spec, sched, wages, mode) : 0;

    if (!remote_allowed || i_star == 0) {
        // Everyone commutes daily; utility set by the outermost location.
        lt.all_office = remote_allowed;
        lt.utility = g_value(spec, sched, wages, n, spec.areas[n - 1], mode);
        for (int i = 1; i < n; ++i)
            lt.rent[i - 1] =
                checked_rent(g_value(spec, sched, wages, i, spec.areas[i - 1], mode) - lt.utility, i);
    } else {
        // Remote work pins utility; rents absorb the inner locations' surplus.
        lt.mixed_zone = i_star;
        lt.utility = wages.remote_wage;
        const double eta = mixed_zone_ratio(spec, sched, wages, i_star, mode);
        for (int i = 1; i <= n; ++i) {
            if (i < i_star) {
                lt.rent[i - 1] = checked_rent(
                    g_value(spec, sched, wages, i, spec.areas[i - 1], mode) - lt.utility, i);
            } else if (i == i_star) {
                lt.ratio[i - 1] = eta;
                lt.zone[i - 1] = eta == 0.0 ? ZoneKind::remote : ZoneKind::mixed;
            } else {
                lt.ratio[i - 1] = 0.0;
                lt.zone[i - 1] = ZoneKind::remote;
            }
        }
    }
    for (int i = 0; i < n; ++i) lt.mass[i] = lt.ratio[i] * spec.areas[i];
    return lt;
}

}  // namespace corridor
