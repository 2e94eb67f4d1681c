#include "doctest.h"

#include <cmath>

#include "corridor/schedule_cost.hpp"

using namespace corridor;

namespace {

ScheduleSpec single(double t = 60.0) {
    ScheduleSpec s;
    s.preferred_times = {t};
    s.early_slope = 0.3;
    s.late_slope = 0.6;
    s.horizon_lo = 0.0;
    s.horizon_hi = 100.0;
    return s;
}

ScheduleSpec pair(double lo = 50.0, double hi = 70.0) {
    ScheduleSpec s = single();
    s.preferred_times = {lo, hi};
    return s;
}

}  // namespace

TEST_CASE("schedule validation") {
    CHECK_NOTHROW(validate(single()));
    CHECK_NOTHROW(validate(pair()));

    ScheduleSpec s = pair();
    SUBCASE("early slope below one") {
        s.early_slope = 1.0;
        CHECK_THROWS_AS(validate(s), validation_error);
    }
    SUBCASE("late slope positive") {
        s.late_slope = 0.0;
        CHECK_THROWS_AS(validate(s), validation_error);
    }
    SUBCASE("targets strictly increasing") {
        s.preferred_times = {70.0, 50.0};
        CHECK_THROWS_AS(validate(s), validation_error);
    }
    SUBCASE("targets interior to the horizon") {
        s.preferred_times = {0.0, 70.0};
        CHECK_THROWS_AS(validate(s), validation_error);
    }
    SUBCASE("no targets") {
        s.preferred_times.clear();
        CHECK_THROWS_AS(validate(s), validation_error);
    }
}

TEST_CASE("delta composes the slopes harmonically") {
    CHECK(single().delta() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pair().spacing(1) == 20.0);
    CHECK(pair().uniform_spacing());
}

TEST_CASE("per-target cost and envelope") {
    const ScheduleSpec s = pair();
    CHECK(cost(s, 1, 40.0) == doctest::Approx(3.0));   // 10 early against 50
    CHECK(cost(s, 1, 60.0) == doctest::Approx(6.0));   // 10 late against 50
    CHECK(cost(s, 2, 60.0) == doctest::Approx(3.0));   // 10 early against 70
    CHECK_THROWS_AS(cost(s, 1, -1.0), solve_error);

    CHECK(envelope_at(s, 60.0) == doctest::Approx(3.0));  // the later target wins
    // neighboring costs cross at (late*t1 + early*t2)/(early+late)
    const double crossing = (0.6 * 50.0 + 0.3 * 70.0) / 0.9;
    CHECK(envelope_at(s, crossing) == doctest::Approx(4.0));

    const PiecewiseLinearFn env = envelope(s);
    CHECK(env(crossing) == doctest::Approx(4.0));
    CHECK(env(50.0) == 0.0);
    CHECK(env(70.0) == 0.0);

    const std::vector<Interval> windows = minimizer_windows(s);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].lo == 0.0);
    CHECK(windows[0].hi == doctest::Approx(crossing));
    CHECK(windows[1].hi == 100.0);
    CHECK(minimizer_index(s, 55.0) == 1);
    CHECK(minimizer_index(s, 65.0) == 2);
    CHECK(minimizer_index(s, crossing) == 1);  // boundary goes to the lower k
}

TEST_CASE("level sets merge the per-target windows") {
    SUBCASE("one target") {
        const IntervalSet g = level_set(single(), 5.0);
        REQUIRE(g.size() == 1);
        CHECK(g.parts()[0].lo == doctest::Approx(60.0 - 5.0 / 0.3));
        CHECK(g.parts()[0].hi == doctest::Approx(60.0 + 5.0 / 0.6));
        CHECK(g.measure() == doctest::Approx(5.0 / 0.2));  // c/delta
    }
    SUBCASE("two targets, disjoint at low cost") {
        const IntervalSet g = level_set(pair(), 3.0);
        REQUIRE(g.size() == 2);
        CHECK(g.measure() == doctest::Approx(2.0 * 3.0 / 0.2));
    }
    SUBCASE("two targets, merged once the windows touch") {
        // windows touch when c/early + c/late = spacing, i.e. c = d*delta = 4
        CHECK(level_set(pair(), 4.0).size() == 1);
        const IntervalSet g = level_set(pair(), 6.0);
        REQUIRE(g.size() == 1);
        CHECK(g.measure() == doctest::Approx(6.0 / 0.2 + 20.0));  // c/delta + d
    }
    SUBCASE("zero cost gives the degenerate target points") {
        CHECK(level_set(pair(), 0.0).measure() == 0.0);
    }
}

TEST_CASE("cbar inverts the level-set measure") {
    SUBCASE("one target: both modes coincide") {
        CHECK(cbar(single(), 750.0, 30.0, CbarMode::exact) == doctest::Approx(5.0));
        CHECK(cbar(single(), 750.0, 30.0, CbarMode::merged_formula) == doctest::Approx(5.0));
        CHECK(cbar(single(), 700.0, 10.0, CbarMode::exact) == doctest::Approx(14.0));
    }
    SUBCASE("two targets inside the merged regime: closed form is exact") {
        // X >= 2*d*mu = 1200 keeps the level set in one piece
        const double exact = cbar(pair(), 1800.0, 30.0, CbarMode::exact);
        const double merged = cbar(pair(), 1800.0, 30.0, CbarMode::merged_formula);
        CHECK(exact == doctest::Approx(8.0));
        CHECK(merged == doctest::Approx(8.0));
    }
    SUBCASE("two targets outside the merged regime: the modes disagree") {
        // X = 750 < 1200: the true level set is two pieces, each filled at mu
        const double exact = cbar(pair(), 750.0, 30.0, CbarMode::exact);
        const double merged = cbar(pair(), 750.0, 30.0, CbarMode::merged_formula);
        CHECK(exact == doctest::Approx(2.5));
        CHECK(merged == doctest::Approx(1.0));  // formula applied out of regime
    }
    SUBCASE("zero demand costs nothing") {
        CHECK(cbar(pair(), 0.0, 30.0, CbarMode::exact) == 0.0);
        CHECK(cbar(pair(), 0.0, 30.0, CbarMode::merged_formula) == 0.0);
    }
    SUBCASE("the answer must fit inside the horizon") {
        ScheduleSpec tight = single();
        tight.horizon_lo = 45.0;
        tight.horizon_hi = 70.0;
        CHECK_THROWS_AS(cbar(tight, 750.0, 30.0, CbarMode::exact), solve_error);
    }
}

TEST_CASE("exact cbar round-trips through the level set on uneven spacings") {
    ScheduleSpec s = single();
    s.preferred_times = {40.0, 52.0, 71.0};  // K=3, non-uniform
    for (double X : {10.0, 120.0, 800.0, 1800.0}) {
        const double c = cbar(s, X, 25.0, CbarMode::exact);
        CHECK(level_set(s, c).measure() * 25.0 == doctest::Approx(X).epsilon(1e-9));
    }
}
