#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "fintstab/history.hpp"
#include "fintstab/schedule.hpp"
#include "fintstab/trajectory.hpp"

namespace fintstab {

struct SimConfig {
    double step = 1e-3;
    double t_end = 50.0;
    double settle_tol = 1e-3;
    int record_stride = 10;

    void validate(double tau_bound) const;
};

/// Delayed-state view handed to the right-hand side: interpolated full-state
/// lookups plus the rolling windowed supremum of the reported inf-norm.
class DelayedState {
public:
    DelayedState(const HistoryBuffer& history, SlidingMax& report_sup)
        : history_(history), report_sup_(report_sup) {}

    void state_at(double t, std::span<double> out) const { history_.lookup(t, out); }

    /// sup of the reported inf-norm over [t - tau, t], from pushed samples;
    /// combine with the current stage value on the caller's side.
    double window_sup(double t) const { return report_sup_.max_over_window(t); }

private:
    const HistoryBuffer& history_;
    SlidingMax& report_sup_;
};

struct StepContext {
    double t = 0.0;
    bool in_cts = false;
    const DelayedState* delayed = nullptr;
};

/// A delay differential system assembled for integration. `rhs` fills the
/// derivative of the full integrated state (which may carry appended
/// adaptive gains); `report` extracts the vector whose norms drive the
/// diagnostics; `control` and `gains` only feed the trajectory record.
struct DdeSystem {
    std::size_t state_dim = 0;
    std::size_t report_dim = 0;
    std::vector<double> initial_state;  // constant history
    double tau_bound = 0.0;

    std::function<void(const StepContext&, std::span<const double>, std::span<double>)> rhs;
    std::function<void(std::span<const double>, std::span<double>)> report;  // default: copy
    std::function<void(const StepContext&, std::span<const double>, std::span<double>)> control;
    std::function<std::array<double, 2>(std::span<const double>)> gains;
};

/// Fixed-step classical Runge-Kutta integration with steps clamped so that
/// no step straddles a schedule boundary; delayed values come from linear
/// interpolation of the history buffer. Records every `record_stride` steps
/// plus at every boundary and at t_end.
Trajectory integrate(const DdeSystem& sys, const AicSchedule& schedule, const SimConfig& config);

}  // namespace fintstab
