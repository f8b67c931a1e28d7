#include "fintstab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fintstab {

void PlantBounds::validate() const {
    if (!(alpha2 >= 0.0)) throw ConfigError("plant bounds: alpha2 must be >= 0");
    if (!(tau_bound >= 0.0)) throw ConfigError("plant bounds: tau_bound must be >= 0");
}

void ControlGains::validate() const {
    if (!(alpha3 >= 0.0 && alpha4 >= 0.0)) throw ConfigError("gains must be nonnegative");
}

double solve_sigma(double m1, double m2, double tau) {
    if (!(m2 >= 0.0)) throw ConfigError("solve_sigma: m2 must be >= 0");
    if (!(tau >= 0.0)) throw ConfigError("solve_sigma: tau must be >= 0");
    if (!(m1 > m2)) throw NoPositiveRoot("solve_sigma: requires m1 > m2");
    if (m2 == 0.0) return m1;

    const auto g = [&](double s) { return s - m1 + m2 * std::exp(s * tau); };

    double lo = 0.0;          // g(0) = m2 - m1 < 0
    double hi = m1;           // g(m1) = m2*exp(m1*tau) > 0
    while (!(g(hi) > 0.0)) hi *= 2.0;  // never triggers for m2 > 0; kept as a guard

    const double width_tol = 1e-13 * std::max(1.0, hi);
    while (hi - lo > width_tol) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

LowerBounds lower_bounds(const PlantBounds& plant, const SpanStats& stats, double gamma_bar) {
    plant.validate();
    if (!(gamma_bar >= 0.0 && gamma_bar < 1.0)) {
        throw ConfigError("lower_bounds: gamma_bar must lie in [0,1)");
    }
    if (!(plant.tau_bound < stats.theta_low)) {
        throw DelayTooLarge("lower_bounds: delay bound must be below theta_low");
    }
    const double a12 = plant.alpha1 + plant.alpha2;
    const double denom = stats.theta_low - plant.tau_bound;
    LowerBounds b;
    b.sigma_low = a12 * (stats.theta_high - stats.theta_low) / denom;
    b.alpha3_low = (b.sigma_low + plant.alpha1 + plant.alpha2 * std::exp(b.sigma_low * plant.tau_bound)) / (1.0 - gamma_bar);
    b.varpi1_low = a12 * (plant.tau_bound + stats.theta_high - stats.theta_low) / denom;
    b.alpha4_low = plant.alpha2 + b.varpi1_low;
    return b;
}

Lemma1Result check_lemma1(double m1, double m2, double m3, const SpanStats& stats, double tau) {
    if (!(m1 > m2)) return {false, std::nullopt};
    const double sigma = solve_sigma(m1, m2, tau);
    const double lhs = sigma * (stats.theta_low - tau) - (m2 + m3) * (stats.theta_high - stats.theta_low);
    return {lhs > 0.0, sigma};
}

namespace {

long ceil_inverse(double phi) {
    if (!(phi > 0.0)) return 0;
    // ceil(1/phi) with a one-ulp-scale nudge so that mathematically integer
    // quotients do not round up
    const double v = 1.0 / phi;
    if (v >= 1e15) return 0;  // no meaningful window bound
    return static_cast<long>(std::ceil(v - v * 1e-12));
}

}  // namespace

Certificate check_theorem1(const PlantBounds& plant, const ControlGains& gains,
                           const TwoPhaseMargins& margins, const SpanStats& stats,
                           double gamma_bar) {
    plant.validate();
    gains.validate();
    if (!(gamma_bar >= 0.0 && gamma_bar < 1.0)) {
        throw ConfigError("check_theorem1: gamma_bar must lie in [0,1)");
    }

    Certificate cert;
    const double a12 = plant.alpha1 + plant.alpha2;

    // (15): (1 - gamma_bar)*alpha3 > alpha1 + alpha2
    const double m1 = (1.0 - gamma_bar) * gains.alpha3 - plant.alpha1;
    const double slack15 = (1.0 - gamma_bar) * gains.alpha3 - a12;
    cert.conditions.push_back({"15", slack15 > 0.0, slack15});

    // (21)/(16): sigma from sigma + alpha1 - (1-gamma_bar)*alpha3 + alpha2*exp(sigma*tau) = 0,
    // then sigma*(theta_low - tau) - (alpha1 + alpha2)*(theta_high - theta_low) > 0
    double slack16 = -std::numeric_limits<double>::infinity();
    if (m1 > plant.alpha2) {
        const double sigma = solve_sigma(m1, plant.alpha2, plant.tau_bound);
        cert.sigma_star = sigma;
        slack16 = sigma * (stats.theta_low - plant.tau_bound) - a12 * (stats.theta_high - stats.theta_low);
    }
    cert.conditions.push_back({"16", slack16 > 0.0, slack16});

    // (17): alpha2 - alpha4 + varpi1 < 0
    const double slack17 = gains.alpha4 - plant.alpha2 - margins.varpi1;
    cert.conditions.push_back({"17", slack17 > 0.0, slack17});

    // (18): alpha1 + alpha2 - varpi2 < 0
    const double slack18 = margins.varpi2 - a12;
    cert.conditions.push_back({"18", slack18 > 0.0, slack18});

    // (19): (varpi1 + varpi2)*tau - varpi1*theta_low + varpi2*(theta_high - theta_low) <= -phi;
    // non-strict, so exact-boundary margins must pass despite rounding noise
    const double lhs19 = (margins.varpi1 + margins.varpi2) * plant.tau_bound -
                         margins.varpi1 * stats.theta_low +
                         margins.varpi2 * (stats.theta_high - stats.theta_low);
    const double slack19 = -margins.phi - lhs19;
    const double tol19 = 1e-12 * std::max({1.0, std::fabs(lhs19), margins.phi});
    cert.conditions.push_back({"19", slack19 >= -tol19, slack19});

    cert.certified = true;
    for (const auto& c : cert.conditions) cert.certified = cert.certified && c.satisfied;

    cert.window_count = ceil_inverse(margins.phi);
    cert.settling_window_bound = static_cast<double>(cert.window_count) * stats.theta_high;
    return cert;
}

TwoPhaseMargins suggest_margins(const PlantBounds& plant, const ControlGains& gains,
                                const SpanStats& stats) {
    plant.validate();
    gains.validate();
    const double eps = 1e-6;
    const double varpi2 = plant.alpha1 + plant.alpha2 + eps;
    const double denom = stats.theta_low - plant.tau_bound;
    if (!(denom > 0.0)) throw DelayTooLarge("suggest_margins: delay bound must be below theta_low");

    const double lower = varpi2 * (plant.tau_bound + stats.theta_high - stats.theta_low) / denom;
    const double upper = gains.alpha4 - plant.alpha2;
    if (!(lower < upper)) {
        throw Infeasible("suggest_margins: empty feasible interval for varpi1");
    }
    TwoPhaseMargins m;
    m.varpi1 = 0.5 * (lower + upper);
    m.varpi2 = varpi2;
    m.phi = m.varpi1 * denom - varpi2 * (plant.tau_bound + stats.theta_high - stats.theta_low);
    return m;
}

double theorem2_eta_bound(const PlantBounds& plant, const SpanStats& stats, double gamma_bar) {
    const LowerBounds b = lower_bounds(plant, stats, gamma_bar);
    return (1.0 - gamma_bar) * b.alpha3_low - plant.alpha1;
}

}  // namespace fintstab
