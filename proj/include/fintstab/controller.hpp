#pragma once

#include <span>
#include <vector>

#include "fintstab/certificate.hpp"
#include "fintstab/quantizer.hpp"
#include "fintstab/schedule.hpp"

namespace fintstab {

inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Intermittent quantized controller with fixed gains:
/// u_i = -sgn(q(e_i)) * (alpha3*|q(e_i)| + alpha4) on control spans, 0 on
/// rest spans.
struct ConstantController {
    ControlGains gains;
    const LevelTable* table = nullptr;
    const AicSchedule* schedule = nullptr;

    void force(bool in_cts, std::span<const double> e, std::span<double> u) const;
    /// regime resolved through the schedule (CTS closed at both endpoints)
    std::vector<double> force_at(double t, const std::vector<double>& e) const;
};

/// Parameters of the adaptive gain laws. During control spans
///   alpha3' = mu1*exp(eta*t)*||q(e)||_inf  while the windowed sup-norm
///             exceeds 1, else mu2*||q(e)||_inf;
///   alpha4' = mu3 while the windowed sup-norm lies in (0, 1], else 0.
/// During rest spans both derivatives vanish and the applied control is
/// zero; gains resume from their latched end-of-CTS values.
struct AdaptiveParams {
    double mu1 = 0.01;
    double mu2 = 0.01;
    double mu3 = 0.01;
    double eta = 0.2;
    double alpha3_0 = 0.0;
    double alpha4_0 = 0.0;
    double zero_tol = 1e-9;  // windowed sup at or below this counts as "zero"
};

/// Gain growth rates of the adaptive laws at one instant.
struct GainRates {
    double alpha3_rate = 0.0;
    double alpha4_rate = 0.0;
};
GainRates gain_rates(const AdaptiveParams& params, double t, double sup_window, double q_e_inf);

/// Stateful view of the adaptive controller for step-wise use: explicit
/// Euler gain updates inside control spans, latch/restore across span
/// boundaries.
class AdaptiveController {
public:
    AdaptiveController(AdaptiveParams params, const LevelTable* table, const AicSchedule* schedule);

    double alpha3() const { return alpha3_; }
    double alpha4() const { return alpha4_; }
    const AdaptiveParams& params() const { return params_; }

    /// One explicit-Euler update of the gains inside a control span.
    void step(double t, double dt, double sup_window, double q_e_inf);

    enum class BoundaryKind { CtsEnd, RtsEnd };
    /// Latch gains when a control span ends; restore them when the rest
    /// span ends.
    void reset(double boundary_time, BoundaryKind kind);

    void force(bool in_cts, std::span<const double> e, std::span<double> u) const;

private:
    AdaptiveParams params_;
    const LevelTable* table_;
    const AicSchedule* schedule_;
    double alpha3_;
    double alpha4_;
    double latched3_;
    double latched4_;
};

/// Shared formula of both controllers.
void quantized_force(const LevelTable& table, double alpha3, double alpha4,
                     std::span<const double> e, std::span<double> u);

}  // namespace fintstab
