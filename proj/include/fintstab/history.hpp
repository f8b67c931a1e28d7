#pragma once

#include <deque>
#include <span>
#include <vector>

#include "fintstab/errors.hpp"

namespace fintstab {

/// Time-ordered state samples supporting delayed lookups by linear
/// interpolation. Times at or before zero resolve to the constant initial
/// history vector; lookups past the newest sample are refused rather than
/// extrapolated. Samples older than the retained span are pruned.
class HistoryBuffer {
public:
    HistoryBuffer(std::vector<double> initial_state, double retain_span);

    std::size_t dim() const { return initial_.size(); }
    const std::vector<double>& initial_state() const { return initial_; }
    double latest_time() const;

    void push(double t, std::span<const double> state);
    void prune(double now);

    /// Interpolated state at time t (constant initial history for t <= 0).
    void lookup(double t, std::span<double> out) const;

private:
    struct Sample {
        double t;
        std::vector<double> state;
    };

    std::vector<double> initial_;
    double retain_span_;
    std::deque<Sample> samples_;
};

/// Sliding maximum of a scalar sample stream over a trailing time window,
/// amortized O(1) per operation. Query times must be nondecreasing.
class SlidingMax {
public:
    SlidingMax(double window, double floor_value);

    void push(double t, double value);
    /// max over pushed samples with time >= t - window, together with the
    /// floor value while the window still reaches back to or before time 0.
    double max_over_window(double t);

private:
    struct Entry {
        double t;
        double value;
    };
    double window_;
    double floor_value_;  // norm of the constant pre-zero history
    std::deque<Entry> entries_;
};

}  // namespace fintstab
