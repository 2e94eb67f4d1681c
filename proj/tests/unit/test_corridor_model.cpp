#include "doctest.h"

#include "corridor/corridor_model.hpp"

using namespace corridor;

namespace {

CorridorSpec reference_corridor() {
    CorridorSpec spec;
    spec.capacities = {70.0, 40.0, 10.0};
    spec.free_flow = {1.5, 1.0, 1.0};
    spec.areas = {750.0, 1500.0, 700.0};
    return spec;
}

}  // namespace

TEST_CASE("corridor validation accepts the reference corridor") {
    CHECK_NOTHROW(validate(reference_corridor()));

    CorridorSpec one;
    one.capacities = {10.0};
    one.free_flow = {0.0};
    one.areas = {5.0};
    CHECK_NOTHROW(validate(one));  // single-bottleneck degenerate corridor
}

TEST_CASE("corridor validation names the offending entry") {
    CorridorSpec spec = reference_corridor();

    SUBCASE("capacity ordering") {
        spec.capacities = {40.0, 70.0, 10.0};
        CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("i=1"), validation_error);
    }
    SUBCASE("equal capacities are not strictly decreasing") {
        spec.capacities = {70.0, 70.0, 10.0};
        CHECK_THROWS_AS(validate(spec), validation_error);
    }
    SUBCASE("nonpositive capacity") {
        spec.capacities = {70.0, 40.0, 0.0};
        CHECK_THROWS_AS(validate(spec), validation_error);
    }
    SUBCASE("nonpositive area") {
        spec.areas[1] = 0.0;
        CHECK_THROWS_AS(validate(spec), validation_error);
    }
    SUBCASE("negative free flow") {
        spec.free_flow[2] = -0.25;
        CHECK_THROWS_AS(validate(spec), validation_error);
    }
    SUBCASE("length mismatch") {
        spec.free_flow.pop_back();
        CHECK_THROWS_AS(validate(spec), validation_error);
    }
    SUBCASE("empty corridor") {
        spec.capacities.clear();
        spec.free_flow.clear();
        spec.areas.clear();
        CHECK_THROWS_AS(validate(spec), validation_error);
    }
}

TEST_CASE("residual capacities subtract the next bottleneck out") {
    const std::vector<double> r = residual_capacities(reference_corridor());
    REQUIRE(r.size() == 3);
    CHECK(r[0] == 30.0);
    CHECK(r[1] == 30.0);
    CHECK(r[2] == 10.0);  // outermost keeps its full capacity

    CorridorSpec one;
    one.capacities = {10.0};
    one.free_flow = {0.0};
    one.areas = {5.0};
    CHECK(residual_capacities(one) == std::vector<double>{10.0});
}

TEST_CASE("cumulative free flow accumulates inward links") {
    const CorridorSpec spec = reference_corridor();
    CHECK(cumulative_free_flow(spec, 1) == 1.5);
    CHECK(cumulative_free_flow(spec, 2) == 2.5);
    CHECK(cumulative_free_flow(spec, 3) == 3.5);
    CHECK_THROWS_AS(cumulative_free_flow(spec, 0), validation_error);
    CHECK_THROWS_AS(cumulative_free_flow(spec, 4), validation_error);
}

TEST_CASE("population is the total area") {
    CHECK(total_population(reference_corridor()) == 2950.0);
}

TEST_CASE("wage validation") {
    WageSpec w;
    w.office_wage = 40.0;
    w.remote_wage = 30.0;
    CHECK_NOTHROW(validate(w));

    SUBCASE("remote must stay below office") {
        w.remote_wage = 40.0;
        CHECK_THROWS_AS(validate(w), validation_error);
    }
    SUBCASE("remote must be positive") {
        w.remote_wage = 0.0;
        CHECK_THROWS_AS(validate(w), validation_error);
    }
    SUBCASE("term length at least one day") {
        w.days_per_term = 0;
        CHECK_THROWS_AS(validate(w), validation_error);
    }
}
