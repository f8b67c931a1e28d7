#include <doctest.h>

#include <cmath>
#include <random>

#include "fintstab/quantizer.hpp"

using namespace fintstab;

namespace {

QuantizerSpec worked_spec() {
    QuantizerSpec spec;
    spec.pi0 = 2.0;
    spec.gamma_pattern = {5.0 / 19.0, 1.0 / 19.0};
    spec.max_levels = 64;
    return spec;
}

}  // namespace

TEST_CASE("two-bound pattern generates the worked level set") {
    const LevelTable table = build_levels(worked_spec(), 8.0);

    // printed to four decimals in the source material; 0.55125 appears
    // truncated as 0.5512 there, so the comparison allows half a unit in
    // the fourth decimal place (inclusive)
    const double down[] = {2.0, 1.5, 1.05, 0.7875, 0.55125, 0.4134375};
    const double up[] = {2.8571, 3.8095, 5.4422, 7.2562};
    REQUIRE(table.j_min() == -4);
    REQUIRE(table.j_max() == 5);
    for (long j = 0; j <= 5; ++j) {
        CHECK(table.level(j) == doctest::Approx(down[j]).epsilon(1e-12));
    }
    for (long j = -1; j >= -4; --j) {
        CHECK(std::fabs(table.level(j) - up[-j - 1]) <= 5.05e-5);
    }

    // consecutive ratios alternate between 0.75 and 0.7 (exact up to
    // double rounding of the 1/19-based pattern entries)
    CHECK(std::fabs(table.level(1) / table.level(0) - 0.75) <= 1e-15);
    CHECK(std::fabs(table.level(2) / table.level(1) - 0.7) <= 1e-15);
}

TEST_CASE("singleton pattern gives geometric levels") {
    // delta = (1 - rho)/(1 + rho) with rho = 0.5
    QuantizerSpec spec;
    spec.pi0 = 1.0;
    spec.gamma_pattern = {1.0 / 3.0};
    spec.max_levels = 64;

    const LevelTable table = build_levels(spec, 4.0);
    REQUIRE(table.j_max() >= 2);
    for (long j = table.j_min(); j < table.j_max(); ++j) {
        CHECK(table.level(j + 1) / table.level(j) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(table.level(0) == 1.0);
    CHECK(table.level(1) == doctest::Approx(0.5));
    CHECK(table.level(2) == doctest::Approx(0.25));
}

TEST_CASE("pattern [0.2, 0.4] gives the alternating ratios 0.5 and 4/7") {
    QuantizerSpec spec;
    spec.pi0 = 1.0;
    spec.gamma_pattern = {0.2, 0.4};
    spec.max_levels = 64;

    const LevelTable table = build_levels(spec, 8.0);
    // rho1 = (1-0.4)/(1+0.2) = 0.5, rho2 = (1-0.2)/(1+0.4) = 4/7
    CHECK(table.level(1) / table.level(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(table.level(2) / table.level(1) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(table.level(1) == doctest::Approx(0.5));
    CHECK(table.level(2) == doctest::Approx(2.0 / 7.0));
    CHECK(table.level(3) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("cap per direction is enforced") {
    QuantizerSpec spec = worked_spec();
    spec.max_levels = 3;
    CHECK_THROWS_AS(build_levels(spec, 1e6), CapExceeded);
    CHECK_THROWS_AS(build_levels_range(spec, 1e-9, 2.0), CapExceeded);
}

TEST_CASE("quantize resolves interval membership") {
    const LevelTable table = build_levels(worked_spec(), 8.0);

    CHECK(table.quantize(2.5) == doctest::Approx(2.0));        // 2*19/24 < 2.5 <= 2*19/14
    CHECK(table.quantize(0.0) == 0.0);
    CHECK(table.quantize(-2.5) == doctest::Approx(-2.0));
    CHECK(table.quantize(0.6) == doctest::Approx(0.55125));    // gamma_4 = 5/19 interval

    CHECK_THROWS_AS(table.quantize(100.0), OutOfRange);
    CHECK_THROWS_AS(table.quantize(1e-9), OutOfRange);
}

TEST_CASE("quantize agrees with an exhaustive interval-membership oracle") {
    const LevelTable table = build_levels(worked_spec(), 8.0);
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> pick(table.covered_low() * (1 + 1e-9),
                                                table.covered_high());
    for (int k = 0; k < 2000; ++k) {
        const double v = pick(rng);
        int hits = 0;
        double expected = 0.0;
        for (long j = table.j_min(); j <= table.j_max(); ++j) {
            if (table.lower(j) < v && v <= table.upper(j)) {
                ++hits;
                expected = table.level(j);
            }
        }
        REQUIRE(hits == 1);  // the intervals tile the range
        CHECK(table.quantize(v) == expected);
    }
}

TEST_CASE("sector bound, odd symmetry, idempotence") {
    const LevelTable table = build_levels(worked_spec(), 8.0);
    const double gbar = gamma_bar(worked_spec());
    CHECK(gbar == doctest::Approx(5.0 / 19.0));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(table.covered_low() * (1 + 1e-9),
                                                table.covered_high());
    for (int k = 0; k < 100000; ++k) {
        const double v = pick(rng);
        const double q = table.quantize(v);
        CHECK((1.0 - gbar) * v <= q);
        CHECK(q < (1.0 + gbar) * v);
        CHECK(table.quantize(-v) == -q);
    }
    for (long j = table.j_min(); j <= table.j_max(); ++j) {
        CHECK(table.quantize(table.level(j)) == table.level(j));
    }
}

TEST_CASE("adjacent interval endpoints coincide to 1e-12") {
    const LevelTable table = build_levels(worked_spec(), 8.0);
    for (long j = table.j_min(); j < table.j_max(); ++j) {
        const double a = table.upper(j + 1);
        const double b = table.lower(j);
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(a, b));
    }
}

TEST_CASE("gamma bar of assorted patterns") {
    QuantizerSpec spec;
    spec.pi0 = 1.0;
    spec.gamma_pattern = {0.3};
    CHECK(gamma_bar(spec) == 0.3);
    spec.gamma_pattern = {0.2, 0.4};
    CHECK(gamma_bar(spec) == 0.4);
}

TEST_CASE("gamma recurrence closed form and limit") {
    // stationary point: gamma = (1 - rho)/(1 + rho)
    for (int j = 1; j < 20; ++j) {
        CHECK(gamma_sequence_limit(0.5, 1.0 / 3.0, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    // one step of gamma_{j+1} = -rho*gamma_j + (1 - rho)
    CHECK(gamma_sequence_limit(0.5, 0.2, 2) == doctest::Approx(0.4).epsilon(1e-12));
    // convergence to the fixed point
    CHECK(std::fabs(gamma_sequence_limit(0.5, 0.2, 40) - 1.0 / 3.0) < 1e-9);
}

TEST_CASE("spec validation rejects bad patterns") {
    QuantizerSpec spec;
    spec.pi0 = 1.0;
    spec.gamma_pattern = {0.5, 1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.gamma_pattern = {};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.gamma_pattern = {0.5};
    spec.pi0 = -1.0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
