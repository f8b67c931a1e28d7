#include "fintstab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fintstab {

AicSchedule::AicSchedule(std::vector<double> boundaries, std::optional<SpanStats> declared)
    : boundaries_(std::move(boundaries)), declared_(declared) {
    if (boundaries_.size() < 2) throw ConfigError("schedule: need at least two boundaries");
    if (boundaries_.front() != 0.0) throw ConfigError("schedule: t_0 must be 0");
    for (std::size_t i = 1; i < boundaries_.size(); ++i) {
        if (!(boundaries_[i] > boundaries_[i - 1])) {
            throw ConfigError("schedule: boundaries must be strictly increasing");
        }
    }
    if (declared_ && !(declared_->theta_low > 0.0 && declared_->theta_low <= declared_->theta_high)) {
        throw ConfigError("schedule: declared stats need 0 < theta_low <= theta_high");
    }
}

AicSchedule::Location AicSchedule::locate(double t) const {
    if (t < 0.0 || t >= boundaries_.back()) {
        throw OutOfSchedule("locate: time outside schedule prefix");
    }
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), t);
    const std::size_t seg = static_cast<std::size_t>(it - boundaries_.begin()) - 1;
    // CTS is closed: its right endpoint t_{2k+1} starts an (open) rest segment
    // but still belongs to the control span.
    const bool in_cts = (seg % 2 == 0) || (t == boundaries_[seg]);
    return {seg / 2, in_cts};
}

std::vector<std::string> AicSchedule::declared_mismatch() const {
    std::vector<std::string> warnings;
    if (!declared_) return warnings;
    const std::size_t windows = complete_windows();
    char buf[160];
    for (std::size_t k = 0; k < windows; ++k) {
        const double cts = boundaries_[2 * k + 1] - boundaries_[2 * k];
        if (cts < declared_->theta_low - 1e-12) {
            std::snprintf(buf, sizeof buf, "window %zu: CTS length %.6g below declared theta_low %.6g",
                          k, cts, declared_->theta_low);
            warnings.emplace_back(buf);
        }
        if (2 * k + 2 < boundaries_.size()) {
            const double win = boundaries_[2 * k + 2] - boundaries_[2 * k];
            if (win > declared_->theta_high + 1e-12) {
                std::snprintf(buf, sizeof buf, "window %zu: length %.6g above declared theta_high %.6g",
                              k, win, declared_->theta_high);
                warnings.emplace_back(buf);
            }
        }
    }
    return warnings;
}

SpanStats compute_stats(const AicSchedule& schedule, std::size_t k_max) {
    const auto& b = schedule.boundaries();
    if (k_max == 0 || b.size() < 2 * k_max + 1) {
        throw InsufficientWindows("compute_stats: schedule prefix has too few windows");
    }
    SpanStats stats{b[1] - b[0], b[2] - b[0]};
    for (std::size_t k = 0; k < k_max; ++k) {
        stats.theta_low = std::min(stats.theta_low, b[2 * k + 1] - b[2 * k]);
        stats.theta_high = std::max(stats.theta_high, b[2 * k + 2] - b[2 * k]);
    }
    return stats;
}

bool validate_delay(const SpanStats& stats, double tau_bound) {
    return tau_bound < stats.theta_low;
}

AicSchedule sample_schedule(std::size_t k_max) {
    if (k_max < 1) throw ConfigError("sample_schedule: k_max must be >= 1");
    std::vector<double> b;
    b.reserve(2 * k_max + 1);
    b.push_back(0.0);
    b.push_back(0.8);
    b.push_back(1.0);
    double sin_sum = 0.0;  // sum_{l=1}^{k-1} sin(l)
    for (std::size_t k = 2; k <= k_max; ++k) {
        sin_sum += std::sin(static_cast<double>(k - 1));
        b.push_back(static_cast<double>(k) - 0.2 + 0.1 * sin_sum);
        b.push_back(static_cast<double>(k) + 0.1 * sin_sum);
    }
    return AicSchedule(std::move(b), SpanStats{0.7, 1.1});
}

AicSchedule periodic_schedule(double cts, double window, std::size_t k_max) {
    if (!(cts > 0.0 && window > cts)) {
        throw ConfigError("periodic_schedule: need 0 < cts < window");
    }
    if (k_max < 1) throw ConfigError("periodic_schedule: k_max must be >= 1");
    std::vector<double> b;
    b.reserve(2 * k_max + 1);
    for (std::size_t k = 0; k < k_max; ++k) {
        b.push_back(static_cast<double>(k) * window);
        b.push_back(static_cast<double>(k) * window + cts);
    }
    b.push_back(static_cast<double>(k_max) * window);
    return AicSchedule(std::move(b), SpanStats{cts, window});
}

}  // namespace fintstab
