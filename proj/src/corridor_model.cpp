#include "corridor/corridor_model.hpp"

#include <numeric>
#include <sstream>

namespace corridor {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw validation_error(msg); }

}  // namespace

const CorridorSpec& validate(const CorridorSpec& spec) {
    const std::size_t n = spec.capacities.size();
    if (n == 0) fail("corridor needs at least one location");
    if (spec.free_flow.size() != n || spec.areas.size() != n)
        fail("capacities, free_flow and areas must have equal length");
    for (std::size_t i = 0; i < n; ++i) {
        std::ostringstream at;
        at << " at i=" << (i + 1);
        if (!(spec.capacities[i] > 0.0)) fail("nonpositive capacity" + at.str());
        if (i + 1 < n && !(spec.capacities[i] > spec.capacities[i + 1]))
            fail("capacity ordering violated" + at.str() +
                 " (capacities must strictly decrease away from the workplace)");
        if (spec.free_flow[i] < 0.0) fail("negative free-flow time" + at.str());
        if (!(spec.areas[i] > 0.0)) fail("nonpositive area" + at.str());
    }
    return spec;
}

const WageSpec& validate(const WageSpec& wages) {
    if (!(wages.remote_wage > 0.0)) fail("remote wage must be positive");
    if (!(wages.office_wage > wages.remote_wage))
        fail("office wage must exceed the remote wage");
    if (wages.days_per_term < 1) fail("days per term must be at least 1");
    return wages;
}

std::vector<double> residual_capacities(const CorridorSpec& spec) {
    const int n = spec.location_count();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? spec.capacities[i + 1] : 0.0;
        out[i] = spec.capacities[i] - next;
    }
    return out;
}

double cumulative_free_flow(const CorridorSpec& spec, int i) {
    if (i < 1 || i > spec.location_count()) {
        std::ostringstream msg;
        msg << "location index " << i << " out of range [1, " << spec.location_count() << "]";
        throw validation_error(msg.str());
    }
    return std::accumulate(spec.free_flow.begin(), spec.free_flow.begin() + i, 0.0);
}

double total_population(const CorridorSpec& spec) {
    return std::accumulate(spec.areas.begin(), spec.areas.end(), 0.0);
}

}  // namespace corridor
