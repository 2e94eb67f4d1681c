#pragma once
// Corridor network description: a chain of residential locations feeding one
// workplace through nested bottlenecks.  Location 1 is closest to the
// workplace; a commuter living at location i passes bottlenecks i, i-1, ..., 1.

#include <stdexcept>
#include <string>
#include <vector>

namespace corridor {

// Input violates a model assumption (bad spec, unsupported parameter regime).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A solve left the regime in which the closed forms are valid.
class solve_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CorridorSpec {
    std::vector<double> capacities;  // mu_i, strictly decreasing along the chain
    std::vector<double> free_flow;   // f_i >= 0, link travel time into bottleneck i
    std::vector<double> areas;       // A_i > 0, one worker-lot per unit area

    int location_count() const { return static_cast<int>(capacities.size()); }
};

struct WageSpec {
    double office_wage = 0.0;  // per commuted day
    double remote_wage = 0.0;  // per remote day, strictly below office_wage
    int days_per_term = 1;     // reporting granularity only, never enters the solve
};

// Both validators throw validation_error naming the offending index/field.
const CorridorSpec& validate(const CorridorSpec& spec);
const WageSpec& validate(const WageSpec& wages);

// mu_i - mu_{i+1} with mu_{I+1} = 0; strictly positive once validated.
std::vector<double> residual_capacities(const CorridorSpec& spec);

// Sum of f_j for j <= i; i is 1-based.
double cumulative_free_flow(const CorridorSpec& spec, int i);

// Total worker population; the corridor is always fully occupied.
double total_population(const CorridorSpec& spec);

}  // namespace corridor
