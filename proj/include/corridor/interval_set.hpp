#pragma once
#include <cstddef>
#include <vector>

namespace corridor {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Sorted union of pairwise-disjoint closed intervals.  Degenerate (single
// point) members are allowed; they carry zero measure.
class IntervalSet {
public:
    IntervalSet() = default;

    // Sorts, drops inverted inputs, merges parts that overlap or touch within
    // `slack` (guards against spurious hairline gaps from float arithmetic).
    static IntervalSet from_intervals(std::vector<Interval> parts, double slack = 1e-12);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }
    double measure() const;
    bool contains(double t, double tol = 0.0) const;
    Interval span() const;  // [first lo, last hi]; requires nonempty

private:
    std::vector<Interval> parts_;
};

}  // namespace corridor
