#pragma once

#include <optional>
#include <vector>

#include "fintstab/errors.hpp"
#include "fintstab/schedule.hpp"

namespace fintstab {

struct TrajectorySample {
    double t = 0.0;
    std::vector<double> state;    // reported vector (error/system state)
    std::vector<double> control;
    double norm_inf = 0.0;
    double norm_2 = 0.0;
    bool in_cts = false;
    double alpha3 = 0.0;
    double alpha4 = 0.0;
};

/// Recorded simulation output. Conceptually extends to t <= 0 with the
/// constant initial report vector, so windowed suprema near the start are
/// well defined.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<double> initial_report;  // constant pre-zero history of the reported vector
    double tau_bound = 0.0;

    double t_end() const { return samples.empty() ? 0.0 : samples.back().t; }

    /// Interpolated reported vector at time t (constant history for t <= 0).
    std::vector<double> report_at(double t) const;
};

double inf_norm(const std::vector<double>& v);
double two_norm(const std::vector<double>& v);

/// sup of the interpolated inf-norm over [t - tau, t]: all recorded sample
/// times inside the window plus both interpolated endpoints. Throws
/// WindowNotCovered when the window is not within recorded (or pre-zero)
/// coverage.
double sup_norm_window(const Trajectory& traj, double t, double tau);

/// Earliest recorded time from which the windowed sup-norm stays <= 1
/// through the end of the record; nullopt if that never happens.
std::optional<double> detect_phase1_end(const Trajectory& traj, double tau);

/// Earliest recorded time from which the inf-norm stays <= tol through the
/// end of the record, provided at least `hold` of trajectory remains after
/// it; nullopt otherwise.
std::optional<double> detect_settling(const Trajectory& traj, double tol, double hold);

struct WindowDecrease {
    std::size_t window = 0;
    double decrease = 0.0;  // sup at window end minus sup at window start
};

struct WindowAudit {
    std::vector<WindowDecrease> entries;
    bool passed = true;  // every decrease <= -phi + 1e-6
};

/// Per-window contraction audit: starting from `from_window`, report the
/// change of the windowed sup-norm across each complete window while that
/// sup still exceeds settle_tol.
WindowAudit window_decrease_audit(const Trajectory& traj, const AicSchedule& schedule,
                                  double phi, std::size_t from_window, double settle_tol);

}  // namespace fintstab
