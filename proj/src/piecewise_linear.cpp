#include "corridor/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "corridor/corridor_model.hpp"

namespace corridor {

namespace {

double merge_eps(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

void push_point(std::vector<double>& xs, std::vector<double>& ys, double x, double y) {
    if (!xs.empty() && x <= xs.back() + merge_eps(x)) return;
    xs.push_back(x);
    ys.push_back(y);
}

}  // namespace

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size())
        throw validation_error("piecewise-linear function needs >= 2 matched breakpoints");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1]))
            throw validation_error("piecewise-linear breakpoints must strictly increase");
}

PiecewiseLinearFn PiecewiseLinearFn::constant(double lo, double hi, double value) {
    return PiecewiseLinearFn({lo, hi}, {value, value});
}

double PiecewiseLinearFn::operator()(double t) const {
    const double eps = merge_eps(t);
    if (t < xs_.front() - eps || t > xs_.back() + eps) {
        std::ostringstream msg;
        msg << "evaluation at " << t << " outside domain [" << xs_.front() << ", "
            << xs_.back() << "]";
        throw solve_error(msg.str());
    }
    const double tc = std::clamp(t, xs_.front(), xs_.back());
    auto it = std::upper_bound(xs_.begin(), xs_.end(), tc);
    std::size_t hi = std::min<std::size_t>(it - xs_.begin(), xs_.size() - 1);
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double w = (tc - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + w * (ys_[hi] - ys_[lo]);
}

double PiecewiseLinearFn::slope(int segment) const {
    return (ys_[segment + 1] - ys_[segment]) / (xs_[segment + 1] - xs_[segment]);
}

PiecewiseLinearFn PiecewiseLinearFn::clamp_min(double floor) const {
    std::vector<double> xs, ys;
    xs.reserve(xs_.size() + 4);
    ys.reserve(xs_.size() + 4);
    push_point(xs, ys, xs_.front(), std::max(ys_.front(), floor));
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        const double y0 = ys_[i], y1 = ys_[i + 1];
        if ((y0 - floor) * (y1 - floor) < 0.0) {
            const double xc = xs_[i] + (floor - y0) * (xs_[i + 1] - xs_[i]) / (y1 - y0);
            push_point(xs, ys, xc, floor);
        }
        push_point(xs, ys, xs_[i + 1], std::max(y1, floor));
    }
    return PiecewiseLinearFn(std::move(xs), std::move(ys));
}

double PiecewiseLinearFn::min_value() const {
    return *std::min_element(ys_.begin(), ys_.end());
}

double PiecewiseLinearFn::max_abs() const {
    double m = 0.0;
    for (double y : ys_) m = std::max(m, std::abs(y));
    return m;
}

double PiecewiseLinearFn::integral() const { return integral(xs_.front(), xs_.back()); }

double PiecewiseLinearFn::integral(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    double total = 0.0;
    double x_prev = lo;
    double y_prev = (*this)(lo);
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (xs_[i] <= lo) continue;
        if (xs_[i] >= hi) break;
        total += 0.5 * (y_prev + ys_[i]) * (xs_[i] - x_prev);
        x_prev = xs_[i];
        y_prev = ys_[i];
    }
    total += 0.5 * (y_prev + (*this)(hi)) * (hi - x_prev);
    return total;
}

double PiecewiseLinearFn::integral_over(const IntervalSet& set) const {
    double total = 0.0;
    for (const Interval& p : set.parts()) {
        const double lo = std::max(p.lo, domain_lo());
        const double hi = std::min(p.hi, domain_hi());
        if (hi > lo) total += integral(lo, hi);
    }
    return total;
}

namespace {

PiecewiseLinearFn combine(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b, double sign_b) {
    const double lo = std::max(a.domain_lo(), b.domain_lo());
    const double hi = std::min(a.domain_hi(), b.domain_hi());
    if (!(hi > lo)) throw solve_error("piecewise-linear operands have disjoint domains");
    std::vector<double> grid;
    grid.push_back(lo);
    for (double x : a.xs())
        if (x > lo && x < hi) grid.push_back(x);
    for (double x : b.xs())
        if (x > lo && x < hi) grid.push_back(x);
    grid.push_back(hi);
    std::sort(grid.begin(), grid.end());
    std::vector<double> xs, ys;
    xs.reserve(grid.size());
    ys.reserve(grid.size());
    for (double x : grid) push_point(xs, ys, x, a(x) + sign_b * b(x));
    return PiecewiseLinearFn(std::move(xs), std::move(ys));
}

}  // namespace

PiecewiseLinearFn operator-(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) {
    return combine(a, b, -1.0);
}

PiecewiseLinearFn operator+(const PiecewiseLinearFn& a, const PiecewiseLinearFn& b) {
    return combine(a, b, 1.0);
}

PiecewiseLinearFn operator-(double constant, const PiecewiseLinearFn& f) {
    std::vector<double> ys(f.ys().size());
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = constant - f.ys()[i];
    return PiecewiseLinearFn(f.xs(), std::move(ys));
}

}  // namespace corridor
