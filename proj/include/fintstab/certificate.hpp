#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fintstab/errors.hpp"
#include "fintstab/schedule.hpp"

namespace fintstab {

/// Comparison-system bounds of the controlled plant: linear growth rate
/// alpha1, aggregate delayed gain alpha2, uniform delay bound tau.
struct PlantBounds {
    double alpha1 = 0.0;
    double alpha2 = 0.0;   // >= 0
    double tau_bound = 0.0;  // >= 0

    void validate() const;
};

struct ControlGains {
    double alpha3 = 0.0;
    double alpha4 = 0.0;

    void validate() const;
};

/// Margin constants of the two-phase argument; phi is the guaranteed
/// per-window decrease of the windowed sup-norm.
struct TwoPhaseMargins {
    double varpi1 = 0.0;
    double varpi2 = 0.0;
    double phi = 0.0;
};

struct ConditionRecord {
    std::string name;
    bool satisfied = false;
    double slack = 0.0;  // positive means satisfied (>= 0 for the non-strict one)
};

struct Certificate {
    std::vector<ConditionRecord> conditions;
    std::optional<double> sigma_star;
    bool certified = false;
    long window_count = 0;            // ceil(1/phi)
    double settling_window_bound = 0; // window_count * theta_high
};

/// Closed-form lower bounds on the gain/margin parameters once the plant,
/// span stats and sector bound are fixed.
struct LowerBounds {
    double sigma_low = 0.0;
    double alpha3_low = 0.0;
    double varpi1_low = 0.0;
    double alpha4_low = 0.0;
};

/// Unique positive root of sigma - m1 + m2*exp(sigma*tau) = 0.
/// Requires m1 > m2 >= 0; solved by bracketing plus bisection to relative
/// width 1e-13. For m2 = 0 the closed form sigma = m1 is returned.
double solve_sigma(double m1, double m2, double tau);

LowerBounds lower_bounds(const PlantBounds& plant, const SpanStats& stats, double gamma_bar);

/// Exponential-stability test for the switched comparison inequality
///   p' <= -m1 p + m2 p(t-tau)   on control spans,
///   p' <=  m3 p + m2 p(t-tau)   on rest spans.
/// True iff m1 > m2 and sigma*(theta_low - tau) - (m2+m3)*(theta_high -
/// theta_low) > 0 with sigma the positive root above.
struct Lemma1Result {
    bool holds = false;
    std::optional<double> sigma;
};
Lemma1Result check_lemma1(double m1, double m2, double m3, const SpanStats& stats, double tau);

/// Evaluate all finite-time stability conditions with slack values.
Certificate check_theorem1(const PlantBounds& plant, const ControlGains& gains,
                           const TwoPhaseMargins& margins, const SpanStats& stats,
                           double gamma_bar);

/// Pick margins automatically: varpi2 sits just above alpha1 + alpha2
/// (it only eats into varpi1's budget), varpi1 is the midpoint of its
/// feasible interval, phi the resulting per-window decrease. Throws
/// Infeasible when the interval is empty.
TwoPhaseMargins suggest_margins(const PlantBounds& plant, const ControlGains& gains,
                                const SpanStats& stats);

/// Adaptive-rule growth-rate requirement: eta must exceed
/// (1 - gamma_bar)*alpha3_low - alpha1.
double theorem2_eta_bound(const PlantBounds& plant, const SpanStats& stats, double gamma_bar);

}  // namespace fintstab
