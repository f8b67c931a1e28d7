#pragma once

#include <cstddef>
#include <vector>

#include "fintstab/errors.hpp"

namespace fintstab {

/// Generalized logarithmic quantizer description: a base level pi0 and a
/// cyclic pattern of per-level sector bounds gamma_j in (0,1). The pattern
/// repeats in both index directions, with gamma at index 0 equal to
/// pattern[0] and negative indices wrapping cyclically.
struct QuantizerSpec {
    double pi0 = 1.0;
    std::vector<double> gamma_pattern;
    int max_levels = 256;  // cap per direction

    void validate() const;
    double gamma_at(long j) const;  // cyclic lookup, any integer index
};

/// Largest sector bound of the pattern (the uniform bound gamma_bar < 1).
double gamma_bar(const QuantizerSpec& spec);

/// Sector-bound recurrence for a geometric level set with ratio rho:
/// gamma_{j+1} = -rho*gamma_j + (1-rho). Returns gamma_j in closed form;
/// the limit as j grows is (1-rho)/(1+rho).
double gamma_sequence_limit(double ratio, double gamma_1, int j);

/// Finite slice of the level set Pi. Index j increases toward smaller
/// levels; negative j are the levels above pi0. Consecutive levels satisfy
/// pi_{j+1}/(1-gamma_{j+1}) = pi_j/(1+gamma_j), so the half-open intervals
/// (pi_j/(1+gamma_j), pi_j/(1-gamma_j)] tile the covered magnitude range.
class LevelTable {
public:
    LevelTable(std::vector<double> levels, std::vector<double> gammas, long j_min);

    long j_min() const { return j_min_; }
    long j_max() const { return j_min_ + static_cast<long>(levels_.size()) - 1; }
    std::size_t size() const { return levels_.size(); }

    double level(long j) const { return levels_[index(j)]; }
    double gamma(long j) const { return gammas_[index(j)]; }

    // interval endpoints, recomputed from the exact formulas on every call
    double lower(long j) const { return level(j) / (1.0 + gamma(j)); }
    double upper(long j) const { return level(j) / (1.0 - gamma(j)); }

    /// covered magnitude range (lower(j_max), upper(j_min)]
    double covered_low() const { return lower(j_max()); }
    double covered_high() const { return upper(j_min()); }

    /// Definition-1 map: pi_j on (pi_j/(1+gamma_j), pi_j/(1-gamma_j)],
    /// 0 at 0, odd extension for v < 0. Throws OutOfRange outside the
    /// covered range.
    double quantize(double v) const;

private:
    std::size_t index(long j) const { return static_cast<std::size_t>(j - j_min_); }

    std::vector<double> levels_;  // strictly decreasing
    std::vector<double> gammas_;
    long j_min_;
};

/// Generate the level slice whose interval tiling covers the magnitude
/// window [pi0^2/cover, cover]; levels are produced downward via
/// pi_{j+1} = pi_j*(1-gamma_{j+1})/(1+gamma_j) and upward via the inverse.
/// Throws CapExceeded if either direction needs more than spec.max_levels
/// levels.
LevelTable build_levels(const QuantizerSpec& spec, double cover);

/// Same generation rule with an explicit two-sided magnitude window:
/// upward until an interval upper endpoint reaches cover_high, downward
/// until one drops to cover_low. Simulations use this to reach far below
/// the base level.
LevelTable build_levels_range(const QuantizerSpec& spec, double cover_low, double cover_high);

}  // namespace fintstab
