#include "corridor/instance_gen.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace corridor {

InstanceParams oracle_instance_params() {
    InstanceParams p;
    p.min_locations = 2;
    p.max_locations = 3;
    p.base_lo = 2.0;
    p.base_hi = 3.0;
    p.step_lo = 1.0;
    p.step_hi = 2.0;
    p.spacing_lo = 1.5;
    p.spacing_hi = 2.5;
    p.peak_capacity_lo = 3.0;
    p.peak_capacity_hi = 8.0;
    p.need_mixed_zone = false;  // brute-force suites run at full occupancy
    return p;
}

namespace {

struct Draw {
    std::mt19937_64& rng;
    double operator()(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
};

ScenarioInputs draw_candidate(Draw& draw, const InstanceParams& p) {
    ScenarioInputs in;
    const int n = draw.integer(p.min_locations, p.max_locations);
    const double gamma = draw(0.6, 1.4);
    const double beta = draw(0.5, 0.9);
    const double delta = beta * gamma / (beta + gamma);
    const double d = draw(p.spacing_lo, p.spacing_hi);

    // Capacities shrink outward fast enough that the queue replacement check
    // holds with margin >= 0.1: mu_i/mu_{i+1} - 1 >= gamma + 0.1.
    std::vector<double> mu(n);
    mu[n - 1] = draw(p.peak_capacity_lo, p.peak_capacity_hi);
    for (int i = n - 2; i >= 0; --i) mu[i] = mu[i + 1] * (1.0 + gamma + draw(0.1, 0.8));

    // Full-occupancy window lengths X_i/mu_bar_i: >= 2*spacing keeps the
    // two-start closed form in its single-interval regime; strictly
    // increasing keeps equalized costs strictly increasing outward.
    std::vector<double> len(n);
    len[0] = 2.0 * d + draw(p.base_lo, p.base_hi);
    for (int i = 1; i < n; ++i) len[i] = len[i - 1] + draw(p.step_lo, p.step_hi);

    in.corridor.capacities = mu;
    in.corridor.free_flow.resize(n);
    for (int i = 0; i < n; ++i) in.corridor.free_flow[i] = draw(0.1, 2.0);
    const std::vector<double> residual = residual_capacities(in.corridor);
    in.corridor.areas.resize(n);
    for (int i = 0; i < n; ++i) in.corridor.areas[i] = residual[i] * len[i];

    in.early_slope = beta;
    in.late_slope = gamma;
    in.t_single = 0.0;
    in.t_pair_lo = -0.5 * d;
    in.t_pair_hi = 0.5 * d;

    const double f_total = cumulative_free_flow(in.corridor, n);
    in.wages.remote_wage = draw(8.0, 25.0);
    if (p.need_mixed_zone) {
        // Wage gap placed so that (a) some outward location always prefers
        // remote work and (b) the marginal cost target at any candidate
        // mixed location stays above spacing*delta (single-interval regime).
        const double gap_lo = f_total + d * delta + 0.5;
        const double gap_hi = f_total + (len[n - 1] - d) * delta - 0.5;
        in.wages.office_wage = in.wages.remote_wage + draw(gap_lo, gap_hi);
    } else {
        in.wages.office_wage = in.wages.remote_wage + f_total + len[n - 1] * delta + 1.0;
    }

    const double lam_max = len[n - 1] * delta;  // largest cost the walk can reach
    const double pad = p.need_mixed_zone ? 2.0 : 0.5;
    in.horizon_lo = -0.5 * d - lam_max / beta - pad;
    in.horizon_hi = 0.5 * d + lam_max / gamma + pad;
    return in;
}

bool acceptable(const ScenarioInputs& in, const InstanceParams& p) {
    validate(in);
    if (!p.need_mixed_zone) {
        // Brute-force preset: only the within-day problem at full occupancy
        // has to be solvable in both start patterns.
        for (int k : {1, 2}) {
            const ScheduleSpec sched = in.schedule_for(k);
            const ShortTermSolution st =
                solve_st_so(in.corridor, sched, in.corridor.areas, CbarMode::exact);
            if (!st.qrp.ok) return false;
            const EquilibriumView view = equilibrium_from_qrp(st);
            flow_rates(view);
        }
        return true;
    }
    for (ScenarioLabel label :
         {ScenarioLabel::ns, ScenarioLabel::swh, ScenarioLabel::tlc, ScenarioLabel::cs}) {
        const ScenarioReport rep = run_scenario(in, label, CbarMode::merged_formula);
        if (!rep.st.qrp.ok || !rep.equilibrium_ok) return false;
        const bool remote = rep.scenario.remote_allowed;
        if (remote) {
            const int i_star = rep.lt.mixed_zone;
            if (i_star < 1) return false;
            const double eta = rep.lt.ratio[i_star - 1];
            if (eta < 0.02 || eta > 0.98) return false;  // keep zones non-degenerate
        }
        double prev = -1.0;
        for (int i = 0; i < in.corridor.location_count(); ++i) {
            if (rep.lt.mass[i] <= 0.0) continue;
            if (rep.st.cost[i] - prev < 1e-6) return false;
            prev = rep.st.cost[i];
        }
        flow_rates(equilibrium_from_qrp(rep.st));
    }
    return true;
}

}  // namespace

ScenarioInputs random_instance(std::uint64_t seed, const InstanceParams& params) {
    std::mt19937_64 rng(seed);
    Draw draw{rng};
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        const ScenarioInputs in = draw_candidate(draw, params);
        try {
            if (acceptable(in, params)) return in;
        } catch (const std::exception&) {
            // rejected draw; try again
        }
    }
    throw solve_error("no acceptable random instance within the attempt budget");
}

}  // namespace corridor
