#include "fintstab/history.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fintstab {

HistoryBuffer::HistoryBuffer(std::vector<double> initial_state, double retain_span)
    : initial_(std::move(initial_state)), retain_span_(retain_span) {
    if (initial_.empty()) throw ConfigError("history: empty initial state");
    if (!(retain_span_ >= 0.0)) throw ConfigError("history: retain span must be >= 0");
}

double HistoryBuffer::latest_time() const {
    return samples_.empty() ? 0.0 : samples_.back().t;
}

void HistoryBuffer::push(double t, std::span<const double> state) {
    if (state.size() != initial_.size()) throw HistoryError("history: dimension mismatch");
    if (!samples_.empty() && !(t > samples_.back().t)) {
        throw HistoryError("history: sample times must be strictly increasing");
    }
    samples_.push_back({t, std::vector<double>(state.begin(), state.end())});
}

void HistoryBuffer::prune(double now) {
    const double cutoff = now - retain_span_;
    // keep one sample at or before the cutoff so interpolation can bracket it
    while (samples_.size() >= 2 && samples_[1].t <= cutoff) {
        samples_.pop_front();
    }
}

void HistoryBuffer::lookup(double t, std::span<double> out) const {
    if (out.size() != initial_.size()) throw HistoryError("history: output dimension mismatch");
    if (t <= 0.0 || samples_.empty()) {
        if (t > latest_time() && !samples_.empty()) {
            throw HistoryError("history: lookup past newest sample");
        }
        std::copy(initial_.begin(), initial_.end(), out.begin());
        return;
    }
    if (t > samples_.back().t) {
        throw HistoryError("history: lookup past newest sample");
    }
    // first sample with time >= t
    const auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                                     [](const Sample& s, double tt) { return s.t < tt; });
    if (it->t == t) {
        std::copy(it->state.begin(), it->state.end(), out.begin());
        return;
    }
    if (it == samples_.begin()) {
        // between time 0 (initial history) and the first stored sample
        const double w = t / it->t;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = (1.0 - w) * initial_[i] + w * it->state[i];
        }
        return;
    }
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    if (lo.t > t) throw HistoryError("history: lookup before retained span");
    const double w = (t - lo.t) / (hi.t - lo.t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - w) * lo.state[i] + w * hi.state[i];
    }
}

SlidingMax::SlidingMax(double window, double floor_value)
    : window_(window), floor_value_(floor_value) {
    if (!(window_ >= 0.0)) throw ConfigError("sliding max: window must be >= 0");
}

void SlidingMax::push(double t, double value) {
    while (!entries_.empty() && entries_.back().value <= value) entries_.pop_back();
    entries_.push_back({t, value});
}

double SlidingMax::max_over_window(double t) {
    const double start = t - window_;
    // values in the deque decrease front to back, so the window maximum is
    // always the front entry; an entry is dropped only once its successor
    // also reaches back to the window start, which keeps the estimate
    // conservative by at most one sample spacing
    while (entries_.size() > 1 && entries_[1].t <= start) entries_.pop_front();
    double m = start <= 0.0 ? floor_value_ : -std::numeric_limits<double>::infinity();
    if (!entries_.empty()) m = std::max(m, entries_.front().value);
    return m;
}

}  // namespace fintstab
