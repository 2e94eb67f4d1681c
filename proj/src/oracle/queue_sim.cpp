#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "corridor/oracle/oracle.hpp"

namespace corridor::oracle {

namespace {

// Same raw slope formula the assignment oracle uses; deliberately not the
// library envelope.
double raw_schedule_cost(const ScheduleSpec& sched, double t) {
    double best = std::numeric_limits<double>::infinity();
    for (double tk : sched.preferred_times) {
        const double c = t <= tk ? sched.early_slope * (tk - t) : sched.late_slope * (t - tk);
        best = std::min(best, c);
    }
    return best;
}

// Exact cumulative home departures of one location as a function of the
// departure time.  Built from the analytic flow pieces (linear rates in
// workplace-arrival time) and the location's total-delay curve: departure
// tau(t) = t - delay(t) - free_flow, mass quadratic within a segment.
class DepartureCurve {
public:
    DepartureCurve() = default;

    DepartureCurve(const std::vector<FlowPiece>& pieces, const PiecewiseLinearFn& total_delay,
                   double free_flow_sum) {
        std::vector<FlowPiece> sorted = pieces;
        std::sort(sorted.begin(), sorted.end(),
                  [](const FlowPiece& a, const FlowPiece& b) { return a.t0 < b.t0; });
        double mass = 0.0;
        for (const FlowPiece& p : sorted) {
            std::vector<double> cuts = {p.t0, p.t1};
            for (std::size_t s = 0; s + 1 < total_delay.xs().size(); ++s) {
                const double x = total_delay.xs()[s + 1];
                if (x > p.t0 + 1e-12 && x < p.t1 - 1e-12) cuts.push_back(x);
            }
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                const double a = cuts[c], b = cuts[c + 1];
                if (b - a <= 1e-12) continue;
                Segment seg;
                seg.t0 = a;
                seg.t1 = b;
                const double span = p.t1 - p.t0;
                seg.f0 = p.f0 + (p.f1 - p.f0) * (a - p.t0) / span;
                seg.f1 = p.f0 + (p.f1 - p.f0) * (b - p.t0) / span;
                seg.tau0 = a - total_delay(a) - free_flow_sum;
                seg.tau1 = b - total_delay(b) - free_flow_sum;
                seg.m0 = mass;
                mass += 0.5 * (seg.f0 + seg.f1) * (b - a);
                segments_.push_back(seg);
            }
        }
        total_ = mass;
    }

    bool empty() const { return segments_.empty(); }
    double total() const { return total_; }
    double first_tau() const { return segments_.front().tau0; }
    double last_tau() const { return segments_.back().tau1; }

    double mass_at(double tau) const {
        if (segments_.empty() || tau <= segments_.front().tau0) return 0.0;
        if (tau >= segments_.back().tau1) return total_;
        // first segment whose departure span ends at or after tau
        std::size_t lo = 0, hi = segments_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (segments_[mid].tau1 < tau)
                lo = mid + 1;
            else
                hi = mid;
        }
        const Segment& s = segments_[lo];
        if (tau <= s.tau0) return s.m0;  // gap between window parts
        const double t =
            s.t0 + (tau - s.tau0) * (s.t1 - s.t0) / (s.tau1 - s.tau0);
        const double f = s.f0 + (s.f1 - s.f0) * (t - s.t0) / (s.t1 - s.t0);
        return s.m0 + 0.5 * (s.f0 + f) * (t - s.t0);
    }

    struct Segment {
        double t0, t1, tau0, tau1, f0, f1, m0;
    };
    const std::vector<Segment>& segments() const { return segments_; }

private:
    std::vector<Segment> segments_;
    double total_ = 0.0;
};

class Simulator {
public:
    Simulator(const EquilibriumView& view, double dt)
        : view_(view), spec_(view.so.corridor), sched_(view.so.sched), dt_(dt),
          n_(spec_.location_count()),
          // The replayed system is the one the prices describe: capacities net
          // of the reserved share of any empty outer tail.
          mu_(effective_capacities(spec_, view.so.demand)) {
        prefix_f_.assign(n_ + 1, 0.0);
        for (int i = 1; i <= n_; ++i) prefix_f_[i] = prefix_f_[i - 1] + spec_.free_flow[i - 1];

        const FlowProfile flows = flow_rates(view);
        curves_.reserve(n_);
        double first = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= n_; ++i) {
            curves_.emplace_back(flows.per_location[i - 1], view.total_delay(i), prefix_f_[i]);
            if (!curves_.back().empty()) first = std::min(first, curves_.back().first_tau());
        }
        if (!std::isfinite(first)) return;  // nothing travels
        grid_lo_ = first - 1.0;
        grid_hi_ = sched_.horizon_hi + prefix_f_[n_] + 2.0;
        steps_ = static_cast<int>(std::ceil((grid_hi_ - grid_lo_) / dt_));
        grid_hi_ = grid_lo_ + steps_ * dt_;
        out_.assign(n_, std::vector<double>(steps_ + 1, 0.0));
        for (int g = 1; g <= steps_; ++g) {
            const double tau = grid_lo_ + g * dt_;
            for (int i = n_; i >= 1; --i) {
                const double service = out_[i - 1][g - 1] + mu_[i - 1] * dt_;
                out_[i - 1][g] = std::min(inflow(i, tau), service);
            }
        }
    }

    bool idle() const { return out_.empty(); }

    // Cumulative arrivals at the tail of queue i by time tau: the location's
    // own departures plus everything the next bottleneck out has released,
    // both one free-flow link earlier.
    double inflow(int i, double tau) const {
        const double shifted = tau - spec_.free_flow[i - 1];
        double in = curves_[i - 1].mass_at(shifted);
        if (i < n_) in += released(i + 1, shifted);
        return in;
    }

    // Linear interpolation of the simulated cumulative output curve.
    double released(int i, double tau) const {
        const std::vector<double>& out = out_[i - 1];
        const double x = (tau - grid_lo_) / dt_;
        if (x <= 0.0) return 0.0;
        if (x >= steps_) return out[steps_];
        const int j = static_cast<int>(x);
        const double frac = x - j;
        return out[j] + frac * (out[j + 1] - out[j]);
    }

    // First-in-first-out: a unit joining queue i at time a leaves when the
    // cumulative output catches up with the cumulative input at a.
    double exit_time(int i, double a) const {
        const double target = inflow(i, a);
        if (target <= 0.0) return a;
        const std::vector<double>& out = out_[i - 1];
        const auto it = std::lower_bound(out.begin(), out.end(), target);
        if (it == out.begin()) return a;
        if (it == out.end()) {
            // grid ended while backed up; queue drains at full capacity
            return grid_hi_ + (target - out.back()) / mu_[i - 1];
        }
        const std::size_t j = static_cast<std::size_t>(it - out.begin());
        const double tstar = grid_lo_ + (j - 1) * dt_ +
                             dt_ * (target - out[j - 1]) / (out[j] - out[j - 1]);
        return std::max(a, tstar);
    }

    // Full realized trip cost of departing home at tau from location i.
    double trip_cost(int i, double tau) const {
        double a = tau + spec_.free_flow[i - 1];
        for (int j = i; j >= 1; --j) {
            a = exit_time(j, a);
            if (j > 1) a += spec_.free_flow[j - 2];
        }
        return (a - tau - prefix_f_[i]) + raw_schedule_cost(sched_, a);
    }

    OracleVerdict run() const {
        OracleVerdict v;
        if (idle()) return v;
        double total = 0.0;
        for (const DepartureCurve& c : curves_) total += c.total();
        v.feasibility_residual = total - out_[0][steps_];

        for (int i = 1; i <= n_; ++i) {
            if (curves_[i - 1].empty()) continue;
            const double lambda = view_.so.cost[i - 1];
            const PiecewiseLinearFn& delay = view_.delay(i);
            const PiecewiseLinearFn& total_delay = view_.total_delay(i);

            // realized vs analytic delay at this bottleneck, sampled on the
            // arrival window where its queue is active
            for (const Interval& part : view_.so.window[i - 1].parts()) {
                for (double t = part.lo + 2 * dt_; t <= part.hi - 2 * dt_; t += dt_) {
                    const double a = t - prefix_f_[i - 1] - total_delay(t);
                    const double simulated = exit_time(i, a) - a;
                    v.max_profile_dev =
                        std::max(v.max_profile_dev, std::abs(simulated - delay(t)));
                }
            }

            // realized trip cost over departures the solution actually uses
            for (const DepartureCurve::Segment& s : curves_[i - 1].segments()) {
                const double span = s.tau1 - s.tau0;
                if (span <= 2 * dt_) continue;
                const double step = std::max(dt_, span / 64.0);
                for (double tau = s.tau0 + dt_; tau <= s.tau1 - dt_; tau += step)
                    v.equalization_gap =
                        std::max(v.equalization_gap, std::abs(trip_cost(i, tau) - lambda));
            }

            // can any departure time anywhere beat the equalized cost?
            double cheapest = std::numeric_limits<double>::infinity();
            const double tau_hi = grid_hi_ - prefix_f_[i];
            for (double tau = grid_lo_; tau <= tau_hi; tau += 2 * dt_)
                cheapest = std::min(cheapest, trip_cost(i, tau));
            v.best_deviation_gain = std::max(v.best_deviation_gain, lambda - cheapest);
        }
        return v;
    }

private:
    const EquilibriumView& view_;
    const CorridorSpec& spec_;
    const ScheduleSpec& sched_;
    double dt_;
    int n_;
    std::vector<double> mu_;
    std::vector<double> prefix_f_;
    std::vector<DepartureCurve> curves_;
    double grid_lo_ = 0.0, grid_hi_ = 0.0;
    int steps_ = 0;
    std::vector<std::vector<double>> out_;
};

}  // namespace

OracleVerdict queue_sim(const EquilibriumView& view, double dt) {
    if (dt <= 0) throw validation_error("simulation step must be positive");
    return Simulator(view, dt).run();
}

}  // namespace corridor::oracle
