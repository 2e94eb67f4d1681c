#pragma once
#include <vector>

#include "corridor/interval_set.hpp"

namespace corridor {

// Continuous piecewise-linear function on [xs.front(), xs.back()].
// All algebra is exact breakpoint arithmetic; nothing is sampled.
class PiecewiseLinearFn {
public:
    PiecewiseLinearFn() = default;
    // xs strictly increasing, ys same length, at least two points.
    PiecewiseLinearFn(std::vector<double> xs, std::vector<double> ys);

    static PiecewiseLinearFn constant(double lo, double hi, double value);

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }
    double domain_lo() const { return xs_.front(); }
    double domain_hi() const { return xs_.back(); }

    double operator()(double t) const;  // throws solve_error outside the domain

    int segment_count() const { return static_cast<int>(xs_.size()) - 1; }
    double slope(int segment) const;

    // Pointwise max with a constant; inserts exact crossing breakpoints.
    PiecewiseLinearFn clamp_min(double floor) const;

    double min_value() const;
    double max_abs() const;

    double integral() const;                    // over the whole domain
    double integral(double lo, double hi) const;  // [lo, hi] must lie in the domain
    double integral_over(const IntervalSet& set) const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

// Binary ops act on the intersection of the operand domains and throw
// solve_error when the domains are disjoint.
PiecewiseLinearFn operator-(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b);
PiecewiseLinearFn operator+(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b);
PiecewiseLinearFn operator-(double constant, const PiecewiseLinearFn& f);

}  // namespace corridor
