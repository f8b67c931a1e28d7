#include "fintstab/controller.hpp"

#include <cmath>

namespace fintstab {

void quantized_force(const LevelTable& table, double alpha3, double alpha4,
                     std::span<const double> e, std::span<double> u) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double q = table.quantize(e[i]);
        u[i] = -sgn(q) * (alpha3 * std::fabs(q) + alpha4);
    }
}

void ConstantController::force(bool in_cts, std::span<const double> e, std::span<double> u) const {
    if (!in_cts) {
        for (auto& x : u) x = 0.0;
        return;
    }
    quantized_force(*table, gains.alpha3, gains.alpha4, e, u);
}

std::vector<double> ConstantController::force_at(double t, const std::vector<double>& e) const {
    std::vector<double> u(e.size());
    force(schedule->locate(t).in_cts, e, u);
    return u;
}

GainRates gain_rates(const AdaptiveParams& params, double t, double sup_window, double q_e_inf) {
    GainRates r;
    if (sup_window > 1.0) {
        r.alpha3_rate = params.mu1 * std::exp(params.eta * t) * q_e_inf;
        r.alpha4_rate = 0.0;
    } else if (sup_window > params.zero_tol) {
        r.alpha3_rate = params.mu2 * q_e_inf;
        r.alpha4_rate = params.mu3;
    } else {
        r.alpha3_rate = 0.0;
        r.alpha4_rate = 0.0;
    }
    return r;
}

AdaptiveController::AdaptiveController(AdaptiveParams params, const LevelTable* table,
                                       const AicSchedule* schedule)
    : params_(params),
      table_(table),
      schedule_(schedule),
      alpha3_(params.alpha3_0),
      alpha4_(params.alpha4_0),
      latched3_(params.alpha3_0),
      latched4_(params.alpha4_0) {}

void AdaptiveController::step(double t, double dt, double sup_window, double q_e_inf) {
    const GainRates r = gain_rates(params_, t, sup_window, q_e_inf);
    alpha3_ += dt * r.alpha3_rate;
    alpha4_ += dt * r.alpha4_rate;
}

void AdaptiveController::reset(double /*boundary_time*/, BoundaryKind kind) {
    if (kind == BoundaryKind::CtsEnd) {
        latched3_ = alpha3_;
        latched4_ = alpha4_;
    } else {
        alpha3_ = latched3_;
        alpha4_ = latched4_;
    }
}

void AdaptiveController::force(bool in_cts, std::span<const double> e, std::span<double> u) const {
    if (!in_cts) {
        for (auto& x : u) x = 0.0;
        return;
    }
    quantized_force(*table_, alpha3_, alpha4_, e, u);
}

}  // namespace fintstab
