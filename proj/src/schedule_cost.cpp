#include "corridor/schedule_cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace corridor {

double ScheduleSpec::delta() const {
    return early_slope * late_slope / (early_slope + late_slope);
}

double ScheduleSpec::spacing(int k) const { return preferred_times[k] - preferred_times[k - 1]; }

bool ScheduleSpec::uniform_spacing(double tol) const {
    for (int k = 2; k < count(); ++k)
        if (std::abs(spacing(k) - spacing(1)) > tol) return false;
    return true;
}

const ScheduleSpec& validate(const ScheduleSpec& spec) {
    if (spec.preferred_times.empty()) throw validation_error("need at least one preferred arrival time");
    if (!(spec.early_slope > 0.0 && spec.early_slope < 1.0))
        throw validation_error("early arrival slope must lie in (0, 1)");
    if (!(spec.late_slope > 0.0)) throw validation_error("late arrival slope must be positive");
    if (!(spec.horizon_hi > spec.horizon_lo)) throw validation_error("empty horizon");
    for (int k = 0; k < spec.count(); ++k) {
        const double t = spec.preferred_times[k];
        if (!(t > spec.horizon_lo && t < spec.horizon_hi)) {
            std::ostringstream msg;
            msg << "preferred time " << t << " not interior to the horizon";
            throw validation_error(msg.str());
        }
        if (k > 0 && !(t > spec.preferred_times[k - 1]))
            throw validation_error("preferred times must strictly increase");
    }
    return spec;
}

namespace {

void check_horizon(const ScheduleSpec& spec, double t) {
    const double eps = 1e-12 * std::max(1.0, std::abs(t));
    if (t < spec.horizon_lo - eps || t > spec.horizon_hi + eps) {
        std::ostringstream msg;
        msg << "time " << t << " outside horizon [" << spec.horizon_lo << ", "
            << spec.horizon_hi << "]";
        throw solve_error(msg.str());
    }
}

// Where cost k stops beating cost k+1 (1-based k).
double crossing(const ScheduleSpec& spec, int k) {
    const double b = spec.early_slope, g = spec.late_slope;
    return (g * spec.preferred_times[k - 1] + b * spec.preferred_times[k]) / (b + g);
}

}  // namespace

double cost(const ScheduleSpec& spec, int k, double t) {
    check_horizon(spec, t);
    const double tk = spec.preferred_times.at(k - 1);
    return t < tk ? spec.early_slope * (tk - t) : spec.late_slope * (t - tk);
}

double envelope_at(const ScheduleSpec& spec, double t) {
    check_horizon(spec, t);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= spec.count(); ++k) best = std::min(best, cost(spec, k, t));
    return best;
}

PiecewiseLinearFn envelope(const ScheduleSpec& spec) {
    std::vector<double> xs{spec.horizon_lo};
    for (int k = 1; k <= spec.count(); ++k) {
        xs.push_back(spec.preferred_times[k - 1]);
        if (k < spec.count()) xs.push_back(crossing(spec, k));
    }
    xs.push_back(spec.horizon_hi);
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(envelope_at(spec, x));
    return PiecewiseLinearFn(std::move(xs), std::move(ys));
}

std::vector<Interval> minimizer_windows(const ScheduleSpec& spec) {
    std::vector<Interval> out;
    double lo = spec.horizon_lo;
    for (int k = 1; k < spec.count(); ++k) {
        const double hi = crossing(spec, k);
        out.push_back({lo, hi});
        lo = hi;
    }
    out.push_back({lo, spec.horizon_hi});
    return out;
}

int minimizer_index(const ScheduleSpec& spec, double t) {
    check_horizon(spec, t);
    for (int k = 1; k < spec.count(); ++k)
        if (t <= crossing(spec, k)) return k;
    return spec.count();
}

IntervalSet level_set(const ScheduleSpec& spec, double c) {
    if (c < 0.0) return {};
    std::vector<Interval> parts;
    parts.reserve(spec.count());
    for (double tk : spec.preferred_times) {
        const double lo = std::max(tk - c / spec.early_slope, spec.horizon_lo);
        const double hi = std::min(tk + c / spec.late_slope, spec.horizon_hi);
        parts.push_back({lo, hi});
    }
    return IntervalSet::from_intervals(std::move(parts));
}

namespace {

// The level set at height c must stay interior: every closed form assumes it.
void check_level_fits(const ScheduleSpec& spec, double c, double X) {
    const double reach_lo = spec.preferred_times.front() - c / spec.early_slope;
    const double reach_hi = spec.preferred_times.back() + c / spec.late_slope;
    const double eps = 1e-9;
    if (reach_lo < spec.horizon_lo - eps || reach_hi > spec.horizon_hi + eps) {
        std::ostringstream msg;
        msg << "demand " << X << " needs cost level " << c
            << " whose arrival window exceeds the horizon";
        throw solve_error(msg.str());
    }
}

double cbar_exact(const ScheduleSpec& spec, double X, double mu) {
    const double target = X / mu;  // required level-set measure
    const double delta = spec.delta();
    // Cost levels where adjacent level-set intervals start to merge.
    std::vector<double> levels;
    for (int k = 1; k < spec.count(); ++k) levels.push_back(spec.spacing(k) * delta);
    std::sort(levels.begin(), levels.end());
    double c = 0.0, m = 0.0;
    std::size_t merged = 0;
    while (true) {
        const int components = spec.count() - static_cast<int>(merged);
        const double slope = components / delta;  // d(measure)/d(cost)
        const double c_next = merged < levels.size()
                                  ? levels[merged]
                                  : std::numeric_limits<double>::infinity();
        const double m_next = m + slope * (c_next - c);
        if (target <= m_next || merged == levels.size()) {
            c += (target - m) / slope;
            break;
        }
        c = c_next;
        m = m_next;
        ++merged;
    }
    return c;
}

double cbar_merged(const ScheduleSpec& spec, double X, double mu) {
    if (spec.count() > 2)
        throw validation_error("merged closed form is defined for one or two preferred times");
    const double d = spec.count() == 2 ? spec.spacing(1) : 0.0;
    return (X / mu - d * (spec.count() - 1)) * spec.delta();
}

}  // namespace

double cbar(const ScheduleSpec& spec, double X, double mu, CbarMode mode) {
    if (X < 0.0) throw validation_error("negative demand mass");
    if (!(mu > 0.0)) throw validation_error("nonpositive capacity");
    if (X == 0.0) return 0.0;
    const double c = mode == CbarMode::exact ? cbar_exact(spec, X, mu) : cbar_merged(spec, X, mu);
    if (c > 0.0) check_level_fits(spec, c, X);
    return c;
}

const char* to_string(CbarMode mode) {
    return mode == CbarMode::exact ? "exact" : "merged_formula";
}

}  // namespace corridor
