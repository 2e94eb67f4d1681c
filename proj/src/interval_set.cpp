#include "corridor/interval_set.hpp"

#include <algorithm>

#include "corridor/corridor_model.hpp"

namespace corridor {

IntervalSet IntervalSet::from_intervals(std::vector<Interval> parts, double slack) {
    std::erase_if(parts, [](const Interval& p) { return p.hi < p.lo; });
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalSet out;
    for (const Interval& p : parts) {
        if (!out.parts_.empty() && p.lo <= out.parts_.back().hi + slack) {
            out.parts_.back().hi = std::max(out.parts_.back().hi, p.hi);
        } else {
            out.parts_.push_back(p);
        }
    }
    return out;
}

double IntervalSet::measure() const {
    double total = 0.0;
    for (const Interval& p : parts_) total += p.length();
    return total;
}

bool IntervalSet::contains(double t, double tol) const {
    for (const Interval& p : parts_) {
        if (t >= p.lo - tol && t <= p.hi + tol) return true;
        if (p.lo - tol > t) break;
    }
    return false;
}

Interval IntervalSet::span() const {
    if (parts_.empty()) throw solve_error("span of an empty interval set");
    return {parts_.front().lo, parts_.back().hi};
}

}  // namespace corridor
