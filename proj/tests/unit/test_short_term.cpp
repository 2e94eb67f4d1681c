#include "doctest.h"

#include <cmath>

#include "corridor/short_term.hpp"

using namespace corridor;

namespace {

CorridorSpec reference_corridor() {
    CorridorSpec spec;
    spec.capacities = {70.0, 40.0, 10.0};
    spec.free_flow = {1.5, 1.0, 1.0};
    spec.areas = {750.0, 1500.0, 700.0};
    return spec;
}

ScheduleSpec single_start() {
    ScheduleSpec s;
    s.preferred_times = {60.0};
    s.early_slope = 0.3;
    s.late_slope = 0.6;
    s.horizon_lo = 0.0;
    s.horizon_hi = 100.0;
    return s;
}

}  // namespace

TEST_CASE("queue replacement condition at the reference corridor") {
    const QrpCheck q = check_qrp(reference_corridor(), single_start());
    CHECK(q.ok);
    REQUIRE(q.margins.size() == 3);
    CHECK(q.margins[0] == doctest::Approx(0.75 - 0.6));
    CHECK(q.margins[1] == doctest::Approx(3.0 - 0.6));
    CHECK(std::isinf(q.margins[2]));

    SUBCASE("a near-flat capacity step breaks it") {
        CorridorSpec flat = reference_corridor();
        flat.capacities = {70.0, 65.0, 10.0};  // (70-65)/65 < late slope
        const QrpCheck bad = check_qrp(flat, single_start());
        CHECK(!bad.ok);
        CHECK(bad.margins[0] < 0.0);
        // the optimum itself still solves; its prices are just not delays
        const ShortTermSolution so =
            solve_st_so(flat, single_start(), {5.0, 500.0, 100.0}, CbarMode::exact);
        CHECK_THROWS_AS(equilibrium_from_qrp(so), solve_error);
    }
    SUBCASE("early slope at one breaks it") {
        ScheduleSpec s = single_start();
        s.early_slope = 0.99999;
        CHECK(check_qrp(reference_corridor(), s).ok);
        s.early_slope = 1.0;  // not validated here; the condition itself rejects
        CHECK(!check_qrp(reference_corridor(), s).ok);
    }
}

TEST_CASE("full-occupancy solve reproduces the frozen equalized costs") {
    const ShortTermSolution so = solve_st_so(reference_corridor(), single_start(),
                                             {750.0, 1500.0, 700.0}, CbarMode::exact);
    REQUIRE(so.cost.size() == 3);
    CHECK(so.cost[0] == doctest::Approx(5.0));
    CHECK(so.cost[1] == doctest::Approx(10.0));
    CHECK(so.cost[2] == doctest::Approx(14.0));
    CHECK(so.convex_windows);

    // windows are nested level sets carrying exactly the assigned mass
    const std::vector<double> mu_bar = residual_capacities(so.corridor);
    for (int i = 0; i < 3; ++i) {
        CHECK(so.window[i].measure() * mu_bar[i] == doctest::Approx(so.demand[i]));
        if (i > 0) {
            CHECK(so.window[i].parts().front().lo <= so.window[i - 1].parts().front().lo);
            CHECK(so.window[i].parts().back().hi >= so.window[i - 1].parts().back().hi);
        }
    }

    // prices stack: at the common peak every queue is at its highest
    CHECK(so.cumulative_price[0](60.0) == doctest::Approx(5.0));
    CHECK(so.cumulative_price[1](60.0) == doctest::Approx(10.0));
    CHECK(so.cumulative_price[2](60.0) == doctest::Approx(14.0));
    CHECK(so.bottleneck_price[1](60.0) == doctest::Approx(5.0));
    CHECK(so.bottleneck_price[2](60.0) == doctest::Approx(4.0));
    for (int i = 0; i < 3; ++i) CHECK(so.bottleneck_price[i].min_value() >= -1e-12);

    CHECK(total_commuting_cost(so) == doctest::Approx(28550.0));
    // one start time splits the bill evenly between schedule and queue parts
    CHECK(so_schedule_cost(so) == doctest::Approx(14275.0));
    CHECK(so_queue_cost(so) == doctest::Approx(14275.0));
}

TEST_CASE("an empty outer tail carries the inner queues forward") {
    const ShortTermSolution so = solve_st_so(reference_corridor(), single_start(),
                                             {750.0, 1125.0, 0.0}, CbarMode::exact);
    CHECK(so.cost[0] == doctest::Approx(5.0));
    CHECK(so.cost[1] == doctest::Approx(7.5));
    CHECK(so.cost[2] == 0.0);
    CHECK(so.window[2].empty());

    // the empty location adds no queue of its own, but a commuter from there
    // would still sit through the inner ones
    CHECK(so.bottleneck_price[2].max_abs() == 0.0);
    CHECK(so.cumulative_price[2](60.0) == doctest::Approx(7.5));

    CHECK(last_occupied_location(so.demand) == 2);
    const std::vector<double> eff = effective_capacities(so.corridor, so.demand);
    CHECK(eff[0] == 60.0);  // the tail's 10 stays reserved
    CHECK(eff[1] == 30.0);
    CHECK(eff[2] == 10.0);

    SUBCASE("fully occupied corridors reserve nothing") {
        const std::vector<double> full =
            effective_capacities(reference_corridor(), {750.0, 1500.0, 700.0});
        CHECK(full == reference_corridor().capacities);
        CHECK(last_occupied_location({0.0, 0.0, 0.0}) == 0);
    }
}

TEST_CASE("cost ordering guards the decomposition") {
    SUBCASE("interior empty location below an occupied one") {
        CHECK_THROWS_WITH_AS(solve_st_so(reference_corridor(), single_start(),
                                         {750.0, 0.0, 700.0}, CbarMode::exact),
                             doctest::Contains("empty below occupied"), solve_error);
    }
    SUBCASE("equalized cost falling with distance") {
        CHECK_THROWS_WITH_AS(solve_st_so(reference_corridor(), single_start(),
                                         {2000.0, 10.0, 10.0}, CbarMode::exact),
                             doctest::Contains("ordering violated"), solve_error);
    }
    SUBCASE("a leading empty location is fine") {
        const ShortTermSolution so = solve_st_so(reference_corridor(), single_start(),
                                                 {0.0, 1500.0, 700.0}, CbarMode::exact);
        CHECK(so.cost[0] == 0.0);
        CHECK(so.bottleneck_price[0].max_abs() == 0.0);
        CHECK(so.cost[1] == doctest::Approx(10.0));
    }
    SUBCASE("negative demand is rejected") {
        CHECK_THROWS_AS(solve_st_so(reference_corridor(), single_start(),
                                    {750.0, -1.0, 700.0}, CbarMode::exact),
                        validation_error);
    }
}

TEST_CASE("arrival flows conserve mass and saturate the bottlenecks") {
    const ShortTermSolution so = solve_st_so(reference_corridor(), single_start(),
                                             {750.0, 1500.0, 700.0}, CbarMode::exact);
    const EquilibriumView view = equilibrium_from_qrp(so);
    const FlowProfile flows = flow_rates(view);

    for (int i = 1; i <= 3; ++i)
        CHECK(flows.location_mass(i) == doctest::Approx(so.demand[i - 1]).epsilon(1e-9));

    // inside T_1 every queue is up: bottleneck 1 serves at full capacity and
    // the outer locations run at their residual shares times (1 + cdot)
    CHECK(flows.rate_at(3, 55.0) == doctest::Approx(10.0 * 0.7));
    CHECK(flows.rate_at(3, 65.0) == doctest::Approx(10.0 * 1.6));
    CHECK(flows.rate_at(2, 55.0) == doctest::Approx(30.0 * 0.7));
    // destination arrivals inside T_1 sum to exactly the innermost capacity
    CHECK(flows.through_bottleneck(1, 55.0) == doctest::Approx(70.0));
    CHECK(flows.through_bottleneck(1, 65.0) == doctest::Approx(70.0));

    // on its outer ring the outermost location fills its own bottleneck flat
    CHECK(flows.rate_at(3, 20.0) == doctest::Approx(10.0));
    CHECK(flows.rate_at(3, 80.0) == doctest::Approx(10.0));
    CHECK(flows.rate_at(2, 20.0) == 0.0);  // T_2 does not reach that far
}

TEST_CASE("flows with an empty tail run on the reserved-share capacities") {
    const ShortTermSolution so = solve_st_so(reference_corridor(), single_start(),
                                             {750.0, 1125.0, 0.0}, CbarMode::exact);
    const FlowProfile flows = flow_rates(equilibrium_from_qrp(so));

    CHECK(flows.location_mass(1) == doctest::Approx(750.0));
    CHECK(flows.location_mass(2) == doctest::Approx(1125.0));
    CHECK(flows.per_location[2].empty());

    // T_2 = [35, 72.5], T_1 = [43.33, 68.33]: on the ring location 2 is the
    // last active sender and fills its effective capacity flat
    CHECK(flows.rate_at(2, 40.0) == doctest::Approx(30.0));
    CHECK(flows.rate_at(2, 70.0) == doctest::Approx(30.0));
    // inside T_1 it runs at its residual share while the total destination
    // arrival rate is pinned to the effective innermost capacity 70 - 10
    CHECK(flows.rate_at(2, 55.0) == doctest::Approx(30.0 * 0.7));
    CHECK(flows.through_bottleneck(1, 55.0) == doctest::Approx(60.0));
    CHECK(flows.through_bottleneck(1, 65.0) == doctest::Approx(60.0));
}

TEST_CASE("merged-formula mode propagates into the windows") {
    ScheduleSpec two = single_start();
    two.preferred_times = {50.0, 70.0};
    const CorridorSpec spec = reference_corridor();

    // location 1 sits outside the merged regime: the two modes differ there
    const ShortTermSolution exact = solve_st_so(spec, two, spec.areas, CbarMode::exact);
    const ShortTermSolution merged =
        solve_st_so(spec, two, spec.areas, CbarMode::merged_formula);
    CHECK(exact.cost[0] == doctest::Approx(2.5));
    CHECK(merged.cost[0] == doctest::Approx(1.0));
    CHECK(exact.cost[1] == merged.cost[1]);  // in regime: identical
    CHECK(exact.cost[2] == merged.cost[2]);

    // the exact window at location 1 splits into two pieces and says so
    CHECK(exact.window[0].size() == 2);
    CHECK(!exact.convex_windows);
    const EquilibriumView view = equilibrium_from_qrp(exact);
    CHECK(view.window_warning);
}
