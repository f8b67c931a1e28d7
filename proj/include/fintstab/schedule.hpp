#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fintstab/errors.hpp"

namespace fintstab {

/// Span statistics of an intermittent schedule: theta_low is the infimum of
/// control-span lengths, theta_high the supremum of window lengths.
struct SpanStats {
    double theta_low = 0.0;
    double theta_high = 0.0;
};

/// Aperiodically intermittent control schedule. Boundaries t_0=0 < t_1 < ...
/// alternate control time spans [t_{2k}, t_{2k+1}] (closed) and rest time
/// spans (t_{2k+1}, t_{2k+2}) (open). A schedule is a finite prefix; the
/// certificate works with declared span stats while simulation uses the
/// realized boundaries.
class AicSchedule {
public:
    explicit AicSchedule(std::vector<double> boundaries,
                         std::optional<SpanStats> declared = std::nullopt);

    const std::vector<double>& boundaries() const { return boundaries_; }
    double last_boundary() const { return boundaries_.back(); }
    std::size_t complete_windows() const { return (boundaries_.size() - 1) / 2; }
    const std::optional<SpanStats>& declared_stats() const { return declared_; }

    /// window index and CTS membership for a time in [0, last boundary).
    struct Location {
        std::size_t window = 0;
        bool in_cts = false;
    };
    Location locate(double t) const;

    /// Warnings when realized spans of the prefix violate the declared
    /// stats; empty when nothing is declared or everything is consistent.
    std::vector<std::string> declared_mismatch() const;

private:
    std::vector<double> boundaries_;
    std::optional<SpanStats> declared_;
};

/// Realized min CTS length and max window length over the first k_max
/// complete windows. Throws InsufficientWindows when the prefix is shorter.
SpanStats compute_stats(const AicSchedule& schedule, std::size_t k_max);

/// Small-delay requirement: the delay bound must stay below the shortest
/// control span, tau < theta_low (strict).
bool validate_delay(const SpanStats& stats, double tau_bound);

/// The benchmark schedule t_0=0, t_1=0.8, t_2=1 and, for k >= 2,
/// t_{2k-1} = k - 0.2 + 0.1*sum_{l<k} sin(l), t_{2k} = k + 0.1*sum_{l<k} sin(l),
/// so CTS lengths are 0.8 + 0.1 sin k and window lengths 1 + 0.1 sin k.
AicSchedule sample_schedule(std::size_t k_max);

/// Strictly periodic schedule with fixed CTS length and window length.
AicSchedule periodic_schedule(double cts, double window, std::size_t k_max);

}  // namespace fintstab
