#pragma once
// Schedule-delay cost algebra: per-target costs, their lower envelope, level
// sets, and the window-filling cost cbar(X, mu) that prices a demand mass X
// through a capacity-mu bottleneck at equalized cost.

#include <vector>

#include "corridor/corridor_model.hpp"
#include "corridor/interval_set.hpp"
#include "corridor/piecewise_linear.hpp"

namespace corridor {

// exact: cbar solves measure(level_set(c)) * mu = X for the piecewise-linear
//        cost family, segment by segment (valid for any K and spacing).
// merged_formula: the single-interval closed form c = (X/mu - d(K-1)) * delta,
//        applied unconditionally; it matches exact iff the level set at the
//        answer is one merged interval (X >= 2 d mu for K = 2).
enum class CbarMode { exact, merged_formula };

struct ScheduleSpec {
    std::vector<double> preferred_times;  // t_k strictly increasing, interior
    double early_slope = 0.0;             // beta in (0,1)
    double late_slope = 0.0;              // gamma > 0
    double horizon_lo = 0.0;
    double horizon_hi = 0.0;

    int count() const { return static_cast<int>(preferred_times.size()); }
    double delta() const;  // early*late/(early+late)
    double spacing(int k) const;          // t_{k+1} - t_k, k 1-based
    bool uniform_spacing(double tol = 1e-9) const;
};

const ScheduleSpec& validate(const ScheduleSpec& spec);

// Cost of arriving at t against target k (1-based): early_slope*(t_k - t)
// before t_k, late_slope*(t - t_k) after.  Throws outside the horizon.
double cost(const ScheduleSpec& spec, int k, double t);

// min_k cost(spec, k, t).
double envelope_at(const ScheduleSpec& spec, double t);

// The same envelope as an exact piecewise-linear function over the horizon.
PiecewiseLinearFn envelope(const ScheduleSpec& spec);

// Partition of the horizon into K windows on which target k attains the
// envelope; adjacent windows meet where neighboring costs cross.
std::vector<Interval> minimizer_windows(const ScheduleSpec& spec);

// Lowest k attaining the envelope at t (window boundaries go to the lower k).
int minimizer_index(const ScheduleSpec& spec, double t);

// Times with envelope <= c: union of [t_k - c/early, t_k + c/late], merged,
// clipped to the horizon.
IntervalSet level_set(const ScheduleSpec& spec, double c);

// Unique c with measure(level_set(c)) * mu = X (exact mode), or the merged
// closed form (merged_formula mode).  Throws solve_error when the level set
// at the answer would poke past the horizon: the closed forms assume an
// unconstrained interior, so clipping silently would corrupt the result.
double cbar(const ScheduleSpec& spec, double X, double mu, CbarMode mode);

const char* to_string(CbarMode mode);

}  // namespace corridor
