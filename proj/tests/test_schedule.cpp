#include <doctest.h>

#include <cmath>

#include "fintstab/schedule.hpp"

using namespace fintstab;

TEST_CASE("benchmark schedule prefix and formulas") {
    const AicSchedule s = sample_schedule(3);
    const auto& b = s.boundaries();
    REQUIRE(b.size() == 7);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == 0.8);
    CHECK(b[2] == 1.0);
    CHECK(b[3] == doctest::Approx(2.0 - 0.2 + 0.1 * std::sin(1.0)).epsilon(1e-15));
    CHECK(std::fabs(b[3] - 1.8841) < 5e-5);
    CHECK(b[4] == doctest::Approx(2.0 + 0.1 * std::sin(1.0)).epsilon(1e-15));
    CHECK(std::fabs(b[4] - 2.0841) < 5e-5);
}

TEST_CASE("benchmark schedule span bounds hold for every window") {
    const AicSchedule s = sample_schedule(200);
    const auto& b = s.boundaries();
    for (std::size_t k = 1; k < 200; ++k) {
        const double cts = b[2 * k + 1] - b[2 * k];
        const double win = b[2 * k + 2] - b[2 * k];
        CHECK(cts == doctest::Approx(0.8 + 0.1 * std::sin(double(k))).epsilon(1e-9));
        CHECK(win == doctest::Approx(1.0 + 0.1 * std::sin(double(k))).epsilon(1e-9));
        CHECK(cts >= 0.7 - 1e-12);
        CHECK(cts <= 0.9 + 1e-12);
        CHECK(win >= 0.9 - 1e-12);
        CHECK(win <= 1.1 + 1e-12);
    }

    const SpanStats stats = compute_stats(s, 200);
    CHECK(stats.theta_low >= 0.7);
    CHECK(stats.theta_low < 0.701);  // inf approached but never attained
    CHECK(stats.theta_high <= 1.1);
    CHECK(stats.theta_high > 1.0999);
}

TEST_CASE("compute_stats on explicit boundaries") {
    const AicSchedule s(std::vector<double>{0.0, 0.5, 0.9, 1.6, 2.0});
    const SpanStats stats = compute_stats(s, 2);
    CHECK(stats.theta_low == doctest::Approx(0.5));
    CHECK(stats.theta_high == doctest::Approx(1.1));

    CHECK_THROWS_AS(compute_stats(s, 3), InsufficientWindows);
}

TEST_CASE("compute_stats of a strictly periodic schedule") {
    const AicSchedule s = periodic_schedule(0.8, 1.0, 10);
    const SpanStats stats = compute_stats(s, 10);
    CHECK(stats.theta_low == doctest::Approx(0.8));
    CHECK(stats.theta_high == doctest::Approx(1.0));
}

TEST_CASE("compute_stats is monotone in the window count") {
    const AicSchedule s = sample_schedule(100);
    double prev_low = 1e9, prev_high = 0.0;
    for (std::size_t k = 1; k <= 100; k += 7) {
        const SpanStats stats = compute_stats(s, k);
        CHECK(stats.theta_low <= prev_low + 1e-15);
        CHECK(stats.theta_high >= prev_high - 1e-15);
        prev_low = stats.theta_low;
        prev_high = stats.theta_high;
    }
}

TEST_CASE("delay validation is strict") {
    CHECK(validate_delay({0.7, 1.1}, 0.5));
    CHECK_FALSE(validate_delay({0.7, 1.1}, 0.7));
    CHECK(validate_delay({0.5, 1.1}, 0.49));
}

TEST_CASE("locate honours closed control spans") {
    const AicSchedule s = sample_schedule(5);

    auto loc = s.locate(0.8);  // right endpoint of the first CTS
    CHECK(loc.window == 0);
    CHECK(loc.in_cts);

    loc = s.locate(0.9);
    CHECK(loc.window == 0);
    CHECK_FALSE(loc.in_cts);

    loc = s.locate(1.0);  // start of window 1
    CHECK(loc.window == 1);
    CHECK(loc.in_cts);

    CHECK_THROWS_AS(s.locate(-0.1), OutOfSchedule);
    CHECK_THROWS_AS(s.locate(1e9), OutOfSchedule);

    // consistency against the boundary list
    const auto& b = s.boundaries();
    for (double t = 0.0; t < b.back(); t += 0.0173) {
        const auto l = s.locate(t);
        const bool expected = (t >= b[2 * l.window] && t <= b[2 * l.window + 1]);
        CHECK(l.in_cts == expected);
    }
}

TEST_CASE("declared stats mismatch warnings") {
    AicSchedule ok(std::vector<double>{0.0, 0.8, 1.0, 1.8, 2.0}, SpanStats{0.7, 1.1});
    CHECK(ok.declared_mismatch().empty());

    AicSchedule bad(std::vector<double>{0.0, 0.5, 1.0, 1.8, 2.0}, SpanStats{0.7, 1.1});
    CHECK(bad.declared_mismatch().size() == 1);
}

TEST_CASE("schedule construction rejects malformed boundaries") {
    CHECK_THROWS_AS(AicSchedule(std::vector<double>{0.1, 0.5}), ConfigError);
    CHECK_THROWS_AS(AicSchedule(std::vector<double>{0.0, 0.5, 0.5}), ConfigError);
    CHECK_THROWS_AS(AicSchedule(std::vector<double>{0.0}), ConfigError);
}
