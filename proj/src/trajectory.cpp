#include "fintstab/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace fintstab {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double two_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> Trajectory::report_at(double t) const {
    if (t <= 0.0 || samples.empty()) return initial_report;
    if (samples.front().t > t) {
        // between the pre-zero history and the first record
        const double w = t / samples.front().t;
        std::vector<double> out(initial_report.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = (1.0 - w) * initial_report[i] + w * samples.front().state[i];
        }
        return out;
    }
    if (t > samples.back().t) throw WindowNotCovered("report_at: time beyond record");
    const auto it = std::lower_bound(samples.begin(), samples.end(), t,
                                     [](const TrajectorySample& s, double tt) { return s.t < tt; });
    if (it->t == t) return it->state;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    std::vector<double> out(lo.state.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - w) * lo.state[i] + w * hi.state[i];
    }
    return out;
}

double sup_norm_window(const Trajectory& traj, double t, double tau) {
    if (traj.samples.empty()) throw WindowNotCovered("sup_norm_window: empty trajectory");
    if (t > traj.t_end() || t < 0.0) {
        throw WindowNotCovered("sup_norm_window: window beyond record");
    }
    const double start = t - tau;
    double m = std::max(inf_norm(traj.report_at(start)), inf_norm(traj.report_at(t)));
    if (start < 0.0) m = std::max(m, inf_norm(traj.initial_report));
    const auto lo = std::lower_bound(traj.samples.begin(), traj.samples.end(), start,
                                     [](const TrajectorySample& s, double tt) { return s.t < tt; });
    for (auto it = lo; it != traj.samples.end() && it->t <= t; ++it) {
        m = std::max(m, it->norm_inf);
    }
    return m;
}

std::optional<double> detect_phase1_end(const Trajectory& traj, double tau) {
    // scan from the back: find the longest suffix on which the windowed sup
    // stays <= 1, then report its first recorded time
    std::optional<double> result;
    for (std::size_t i = traj.samples.size(); i-- > 0;) {
        const double t = traj.samples[i].t;
        if (sup_norm_window(traj, t, tau) <= 1.0) {
            result = t;
        } else {
            break;
        }
    }
    return result;
}

std::optional<double> detect_settling(const Trajectory& traj, double tol, double hold) {
    std::optional<double> first_below;
    for (std::size_t i = traj.samples.size(); i-- > 0;) {
        if (traj.samples[i].norm_inf <= tol) {
            first_below = traj.samples[i].t;
        } else {
            break;
        }
    }
    if (!first_below) return std::nullopt;
    if (traj.t_end() - *first_below < hold) return std::nullopt;
    return first_below;
}

WindowAudit window_decrease_audit(const Trajectory& traj, const AicSchedule& schedule,
                                  double phi, std::size_t from_window, double settle_tol) {
    WindowAudit audit;
    const auto& b = schedule.boundaries();
    const double horizon = traj.t_end();
    for (std::size_t k = from_window; 2 * (k + 1) < b.size(); ++k) {
        const double t0 = b[2 * k];
        const double t1 = b[2 * (k + 1)];
        if (t1 > horizon) break;
        const double s0 = sup_norm_window(traj, t0, traj.tau_bound);
        if (s0 <= settle_tol) break;
        const double s1 = sup_norm_window(traj, t1, traj.tau_bound);
        const double decrease = s1 - s0;
        audit.entries.push_back({k, decrease});
        if (!(decrease <= -phi + 1e-6)) audit.passed = false;
    }
    return audit;
}

}  // namespace fintstab
