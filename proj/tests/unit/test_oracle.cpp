#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "corridor/instance_gen.hpp"
#include "corridor/oracle/oracle.hpp"
#include "corridor/scenarios.hpp"

using namespace corridor;
using oracle::equilibrium_gap;
using oracle::GapBreakdown;
using oracle::IntegratedState;
using oracle::integrated_state;
using oracle::lp_st_so;
using oracle::OracleVerdict;
using oracle::queue_sim;

namespace {

ScenarioInputs reference_inputs() {
    ScenarioInputs in;
    in.corridor.capacities = {70.0, 40.0, 10.0};
    in.corridor.free_flow = {1.5, 1.0, 1.0};
    in.corridor.areas = {750.0, 1500.0, 700.0};
    in.wages.office_wage = 40.0;
    in.wages.remote_wage = 30.0;
    in.early_slope = 0.3;
    in.late_slope = 0.6;
    in.horizon_lo = 0.0;
    in.horizon_hi = 100.0;
    in.t_single = 60.0;
    in.t_pair_lo = 50.0;
    in.t_pair_hi = 70.0;
    return in;
}

EquilibriumView view_of(const ScenarioReport& rep) { return equilibrium_from_qrp(rep.st); }

}  // namespace

TEST_CASE("discrete assignment reproduces the everyone-commutes optimum") {
    const ScenarioInputs in = reference_inputs();
    const ScheduleSpec sched = in.schedule_for(1);
    const std::vector<double> demand = in.corridor.areas;  // full occupancy
    const ShortTermSolution so = solve_st_so(in.corridor, sched, demand, CbarMode::exact);

    const double dt = 0.05;
    const OracleVerdict v = lp_st_so(in.corridor, sched, demand, dt, &so);
    CHECK(v.objective > 0.0);
    CHECK(v.objective_rel_err <= 0.01);
    CHECK(v.max_dual_dev <= 5.0 * sched.late_slope * dt);
    CHECK(v.feasibility_residual <= 1e-6 * total_population(in.corridor));
    REQUIRE(v.duals.size() == 3);
    CHECK(v.duals[0] == doctest::Approx(5.0).epsilon(0.05));
    CHECK(v.duals[1] == doctest::Approx(10.0).epsilon(0.05));
    CHECK(v.duals[2] == doctest::Approx(14.0).epsilon(0.05));
}

TEST_CASE("zero demand routes nothing") {
    const ScenarioInputs in = reference_inputs();
    const OracleVerdict v =
        lp_st_so(in.corridor, in.schedule_for(1), {0.0, 0.0, 0.0}, 0.1, nullptr);
    CHECK(v.objective == 0.0);
    CHECK(v.feasibility_residual == 0.0);
    for (double d : v.duals) CHECK(d == 0.0);
}

TEST_CASE("assignment oracle adjudicates the split-window marginal cost") {
    // One bottleneck, two start times far enough apart that the cheapest
    // arrivals form two disjoint intervals: the level-set inversion gives
    // 2.5, the single-interval shortcut would give 1.0.  The brute-force
    // marginal cost must side with the inversion.
    CorridorSpec one;
    one.capacities = {30.0};
    one.free_flow = {1.0};
    one.areas = {750.0};
    ScheduleSpec sched;
    sched.preferred_times = {50.0, 70.0};
    sched.early_slope = 0.3;
    sched.late_slope = 0.6;
    sched.horizon_lo = 0.0;
    sched.horizon_hi = 100.0;

    const ShortTermSolution exact = solve_st_so(one, sched, {750.0}, CbarMode::exact);
    REQUIRE(exact.cost[0] == doctest::Approx(2.5));
    const ShortTermSolution merged =
        solve_st_so(one, sched, {750.0}, CbarMode::merged_formula);
    REQUIRE(merged.cost[0] == doctest::Approx(1.0));

    const double dt = 0.05;
    const OracleVerdict v = lp_st_so(one, sched, {750.0}, dt, &exact);
    REQUIRE(v.duals.size() == 1);
    CHECK(std::abs(v.duals[0] - 2.5) <= 5.0 * sched.late_slope * dt);
    CHECK(std::abs(v.duals[0] - 1.0) > 1.0);  // decisively not the shortcut value
    CHECK(v.objective_rel_err <= 0.01);
}

TEST_CASE("point-queue replay matches the constructed delays") {
    const ScenarioInputs in = reference_inputs();
    const ScenarioReport rep = run_scenario(in, ScenarioLabel::ns, CbarMode::exact);
    const EquilibriumView view = view_of(rep);

    const double dt = 0.01;
    const OracleVerdict v = queue_sim(view, dt);
    CHECK(v.max_profile_dev <= 5.0 * dt);
    CHECK(v.equalization_gap <= 5.0 * dt);
    CHECK(v.best_deviation_gain <= 5.0 * dt);

    SUBCASE("deviation shrinks with the step") {
        const double coarse = queue_sim(view, 0.02).max_profile_dev;
        const double fine = queue_sim(view, 0.005).max_profile_dev;
        CHECK(fine <= coarse / 2.5 + 1e-6);
    }
}

TEST_CASE("replay of the telecommuting equilibrium, empty tail included") {
    const ScenarioInputs in = reference_inputs();
    const ScenarioReport rep = run_scenario(in, ScenarioLabel::tlc, CbarMode::exact);
    REQUIRE(rep.st.demand[2] == 0.0);
    const EquilibriumView view = view_of(rep);

    // nobody commutes from the outermost location: no flow, no queue there
    CHECK(flow_rates(view).per_location[2].empty());
    CHECK(view.delay(3).max_abs() == 0.0);

    const double dt = 0.01;
    const OracleVerdict v = queue_sim(view, dt);
    CHECK(v.max_profile_dev <= 5.0 * dt);
    CHECK(v.equalization_gap <= 5.0 * dt);
    CHECK(v.best_deviation_gain <= 5.0 * dt);
}

TEST_CASE("replay with zero demand is exactly quiet") {
    const ScenarioInputs in = reference_inputs();
    const ShortTermSolution so =
        solve_st_so(in.corridor, in.schedule_for(1), {0.0, 0.0, 0.0}, CbarMode::exact);
    const OracleVerdict v = queue_sim(equilibrium_from_qrp(so), 0.05);
    CHECK(v.max_profile_dev == 0.0);
    CHECK(v.equalization_gap == 0.0);
    CHECK(v.best_deviation_gain <= 0.0);
}

TEST_CASE("equilibrium conditions hold exactly on every analytic solution") {
    const ScenarioInputs in = reference_inputs();
    for (ScenarioLabel l :
         {ScenarioLabel::ns, ScenarioLabel::swh, ScenarioLabel::tlc, ScenarioLabel::cs}) {
        CAPTURE(to_string(l));
        const ScenarioReport rep = run_scenario(in, l, CbarMode::exact);
        const GapBreakdown gap = equilibrium_gap(integrated_state(rep));
        CHECK(gap.max() <= 1e-9);
    }
}

TEST_CASE("the gap evaluator reacts to perturbations at their own size") {
    const ScenarioInputs in = reference_inputs();
    const ScenarioReport rep = run_scenario(in, ScenarioLabel::tlc, CbarMode::exact);
    const IntegratedState base = integrated_state(rep);
    REQUIRE(equilibrium_gap(base).max() <= 1e-9);

    SUBCASE("inflated equalized cost") {
        IntegratedState s = base;
        s.st.cost[0] += 0.1;
        CHECK(equilibrium_gap(s).max() >= 0.09);
    }
    SUBCASE("discounted rent breaks utility equalization") {
        IntegratedState s = base;
        s.rent[0] -= 1.0;
        CHECK(equilibrium_gap(s).work_choice >= 0.9);
    }
    SUBCASE("higher claimed utility is not attainable anywhere") {
        IntegratedState s = base;
        s.utility += 0.5;
        CHECK(equilibrium_gap(s).work_choice >= 0.4);
    }
    SUBCASE("office ratio off its market-clearing value") {
        IntegratedState s = base;
        s.ratio[1] = 0.8;  // demand no longer matches eta * area
        CHECK(equilibrium_gap(s).conservation >= 1.0);
    }
    SUBCASE("negative rent") {
        IntegratedState s = base;
        s.rent[2] = -0.5;
        CHECK(equilibrium_gap(s).land_market >= 0.4);
    }
}

TEST_CASE("seeded instances stay exact under the gap evaluator") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        CAPTURE(seed);
        const ScenarioInputs in = random_instance(seed);
        for (ScenarioLabel l : {ScenarioLabel::tlc, ScenarioLabel::cs}) {
            const ScenarioReport rep = run_scenario(in, l, CbarMode::merged_formula);
            const GapBreakdown gap = equilibrium_gap(integrated_state(rep));
            CHECK(gap.max() <= 1e-9);
        }
    }
}
