#include <doctest.h>

#include <cmath>
#include <random>

#include "fintstab/certificate.hpp"

using namespace fintstab;

namespace {

const PlantBounds kPlant{7.7, 0.06, 0.5};
const SpanStats kStats{0.7, 1.1};
const double kGammaBar = 5.0 / 19.0;

double residual(double sigma, double m1, double m2, double tau) {
    return sigma - m1 + m2 * std::exp(sigma * tau);
}

}  // namespace

TEST_CASE("sigma root: closed form, bracketing, worked value") {
    CHECK(solve_sigma(4.0, 0.0, 0.3) == 4.0);  // m2 = 0 degenerates to sigma = m1

    const double s = solve_sigma(4.0, 1.0, 0.1);
    CHECK(s > 2.69);
    CHECK(s < 2.70);

    // alpha3 at its lower bound makes the root land on sigma_low = 15.52
    const double m1 = (14.0 / 19.0) * 222.4551 - 7.7;
    const double root = solve_sigma(m1, 0.06, 0.5);
    CHECK(std::fabs(root - 15.52) < 0.01);

    CHECK_THROWS_AS(solve_sigma(1.0, 2.0, 0.1), NoPositiveRoot);
    CHECK_THROWS_AS(solve_sigma(1.0, 1.0, 0.1), NoPositiveRoot);
}

TEST_CASE("sigma root: residual and monotonicity over random inputs") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> m1_pick(1e-2, 1e3);
    std::uniform_real_distribution<double> frac(1e-6, 0.99);
    std::uniform_real_distribution<double> tau_pick(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double m1 = m1_pick(rng);
        const double m2 = m1 * frac(rng);
        const double tau = tau_pick(rng);
        const double s = solve_sigma(m1, m2, tau);
        CHECK(s > 0.0);
        CHECK(std::fabs(residual(s, m1, m2, tau)) <= 1e-10 * std::max(1.0, m1));

        // strictly increasing in m1, strictly decreasing in m2 and tau
        CHECK(solve_sigma(m1 * 1.01, m2, tau) > s);
        CHECK(solve_sigma(m1, m2 * 1.01, tau) < s);
        if (tau > 1e-3) CHECK(solve_sigma(m1, m2, tau * 1.01) < s);
    }
}

TEST_CASE("closed-form lower bounds reproduce the worked values") {
    const LowerBounds b = lower_bounds(kPlant, kStats, kGammaBar);
    CHECK(b.sigma_low == doctest::Approx(15.52).epsilon(1e-9));
    CHECK(std::fabs(b.alpha3_low - 222.4551) < 1e-3);
    CHECK(b.varpi1_low == doctest::Approx(34.92).epsilon(1e-9));
    CHECK(b.alpha4_low == doctest::Approx(34.98).epsilon(1e-9));

    CHECK_THROWS_AS(lower_bounds({1.0, 0.0, 1.0}, {0.9, 1.0}, 0.0), DelayTooLarge);
}

TEST_CASE("lower bounds: continuous-control limit and hand-evaluated case") {
    // theta_high = theta_low: zero rest span
    const LowerBounds cont = lower_bounds({2.0, 0.5, 0.25}, {1.0, 1.0}, 0.0);
    CHECK(cont.sigma_low == 0.0);
    CHECK(cont.varpi1_low == doctest::Approx(2.5 * 0.25 / 0.75).epsilon(1e-12));

    const LowerBounds b = lower_bounds({1.0, 0.5, 0.25}, {1.0, 1.5}, 0.0);
    CHECK(b.sigma_low == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.alpha3_low == doctest::Approx(2.0 + 0.5 * std::exp(0.25)).epsilon(1e-12));
    CHECK(std::fabs(b.alpha3_low - 2.6420) < 5e-5);
    CHECK(b.varpi1_low == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(b.alpha4_low == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("theorem-1 certificate at the worked gains") {
    const ControlGains gains{230.0, 36.0};
    const TwoPhaseMargins margins{35.5, 7.8, 0.08};
    const Certificate cert = check_theorem1(kPlant, gains, margins, kStats, kGammaBar);

    CHECK(cert.certified);
    REQUIRE(cert.sigma_star.has_value());
    CHECK(*cert.sigma_star > 15.52);
    CHECK(std::fabs(*cert.sigma_star - 15.60) < 0.01);
    CHECK(cert.window_count == 13);
    CHECK(cert.settling_window_bound == doctest::Approx(14.3).epsilon(1e-12));
    REQUIRE(cert.conditions.size() == 5);
    for (const auto& c : cert.conditions) CHECK(c.satisfied);
    // (19) sits exactly on its boundary with these margins
    CHECK(std::fabs(cert.conditions[4].slack) < 1e-12);
}

TEST_CASE("certificate fails below the gain lower bounds") {
    const ControlGains small{0.04, 0.08};
    const TwoPhaseMargins margins{35.5, 7.8, 0.08};
    const Certificate cert = check_theorem1(kPlant, small, margins, kStats, kGammaBar);
    CHECK_FALSE(cert.certified);
    CHECK_FALSE(cert.conditions[0].satisfied);   // (15)
    CHECK_FALSE(cert.sigma_star.has_value());    // no positive root to solve for
    CHECK_FALSE(cert.conditions[1].satisfied);
}

TEST_CASE("boundary gains put condition 16 on the fence") {
    const LowerBounds b = lower_bounds(kPlant, kStats, kGammaBar);
    const ControlGains gains{b.alpha3_low, b.alpha4_low};
    const TwoPhaseMargins margins{b.varpi1_low, kPlant.alpha1 + kPlant.alpha2, 0.0};
    const Certificate cert = check_theorem1(kPlant, gains, margins, kStats, kGammaBar);
    CHECK(std::fabs(cert.conditions[1].slack) <= 1e-9);  // (16)
    CHECK(std::fabs(cert.conditions[4].slack) <= 1e-9);  // (19)
    CHECK(std::fabs(cert.conditions[2].slack) <= 1e-9);  // (17)
}

TEST_CASE("lemma-1 stability test") {
    // worked phase-I mapping: m1 = (1-gbar)*alpha3 - alpha1, m2 = alpha2, m3 = alpha1
    const double m1 = (1.0 - kGammaBar) * 230.0 - 7.7;
    const auto phase1 = check_lemma1(m1, 0.06, 7.7, kStats, 0.5);
    CHECK(phase1.holds);
    REQUIRE(phase1.sigma.has_value());
    CHECK(std::fabs(*phase1.sigma - 15.60) < 0.01);

    CHECK_FALSE(check_lemma1(1.0, 2.0, 0.0, kStats, 0.1).holds);  // m1 <= m2

    const auto tight = check_lemma1(2.0, 1.0, 0.0, SpanStats{1.0, 1.0}, 0.1);
    CHECK(tight.holds);  // condition reduces to sigma*0.9 > 0

    const auto comparison = check_lemma1(5.0, 1.0, 1.0, SpanStats{0.8, 1.0}, 0.5);
    CHECK(comparison.holds);
}

TEST_CASE("theorem-1 certification implies the phase-I lemma conditions") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> a3_pick(220.0, 400.0);
    std::uniform_real_distribution<double> a4_pick(35.0, 80.0);
    for (int k = 0; k < 200; ++k) {
        const ControlGains gains{a3_pick(rng), a4_pick(rng)};
        TwoPhaseMargins margins;
        try {
            margins = suggest_margins(kPlant, gains, kStats);
        } catch (const Infeasible&) {
            continue;
        }
        const Certificate cert = check_theorem1(kPlant, gains, margins, kStats, kGammaBar);
        if (!cert.certified) continue;
        const double m1 = (1.0 - kGammaBar) * gains.alpha3 - kPlant.alpha1;
        CHECK(check_lemma1(m1, kPlant.alpha2, kPlant.alpha1, kStats, kPlant.tau_bound).holds);
    }
}

TEST_CASE("suggested margins satisfy the certificate at the worked gains") {
    const ControlGains gains{230.0, 36.0};
    const TwoPhaseMargins m = suggest_margins(kPlant, gains, kStats);
    CHECK(m.varpi1 > 34.92);
    CHECK(m.varpi1 < 35.94);
    CHECK(m.phi > 0.0);
    const Certificate cert = check_theorem1(kPlant, gains, m, kStats, kGammaBar);
    CHECK(cert.certified);
}

TEST_CASE("margin suggestion failure modes") {
    CHECK_THROWS_AS(suggest_margins(kPlant, ControlGains{230.0, 0.05}, kStats), Infeasible);
    const LowerBounds b = lower_bounds(kPlant, kStats, kGammaBar);
    CHECK_THROWS_AS(suggest_margins(kPlant, ControlGains{230.0, b.alpha4_low}, kStats), Infeasible);
}

TEST_CASE("adaptive growth-rate bound") {
    const double bound = theorem2_eta_bound(kPlant, kStats, kGammaBar);
    CHECK(std::fabs(bound - 156.23) <= 0.05);
    CHECK_FALSE(0.2 > bound);  // the worked adaptive run uses eta = 0.2

    // gamma_bar = 0 with alpha2 = 0 and equal spans collapses the bound to 0
    CHECK(theorem2_eta_bound({1.0, 0.0, 0.25}, {1.0, 1.0}, 0.0) == doctest::Approx(0.0));
}
