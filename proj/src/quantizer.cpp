#include "fintstab/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fintstab {

namespace {

long floor_mod(long j, long n) {
    long m = j % n;
    return m < 0 ? m + n : m;
}

}  // namespace

void QuantizerSpec::validate() const {
    if (!(pi0 > 0.0)) throw ConfigError("quantizer: pi0 must be positive");
    if (gamma_pattern.empty()) throw ConfigError("quantizer: gamma_pattern must be nonempty");
    for (double g : gamma_pattern) {
        if (!(g > 0.0 && g < 1.0)) throw ConfigError("quantizer: pattern entries must lie in (0,1)");
    }
    if (max_levels <= 0) throw ConfigError("quantizer: max_levels must be positive");
}

double QuantizerSpec::gamma_at(long j) const {
    const long n = static_cast<long>(gamma_pattern.size());
    return gamma_pattern[static_cast<std::size_t>(floor_mod(j, n))];
}

double gamma_bar(const QuantizerSpec& spec) {
    spec.validate();
    return *std::max_element(spec.gamma_pattern.begin(), spec.gamma_pattern.end());
}

double gamma_sequence_limit(double ratio, double gamma_1, int j) {
    const double p = std::pow(-ratio, j - 1);
    return p * gamma_1 + (p - 1.0) / (-ratio - 1.0) * (1.0 - ratio);
}

LevelTable::LevelTable(std::vector<double> levels, std::vector<double> gammas, long j_min)
    : levels_(std::move(levels)), gammas_(std::move(gammas)), j_min_(j_min) {
    if (levels_.empty() || levels_.size() != gammas_.size()) {
        throw ConfigError("LevelTable: level/gamma size mismatch");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!(levels_[i] > 0.0)) throw ConfigError("LevelTable: levels must be positive");
        if (!(gammas_[i] > 0.0 && gammas_[i] < 1.0)) {
            throw ConfigError("LevelTable: gammas must lie in (0,1)");
        }
        if (i > 0) {
            if (!(levels_[i] < levels_[i - 1])) {
                throw ConfigError("LevelTable: levels must be strictly decreasing");
            }
            // adjacency pi_{j+1}/(1-gamma_{j+1}) = pi_j/(1+gamma_j)
            const double a = levels_[i] / (1.0 - gammas_[i]);
            const double b = levels_[i - 1] / (1.0 + gammas_[i - 1]);
            if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
                throw ConfigError("LevelTable: adjacency condition violated");
            }
        }
    }
}

double LevelTable::quantize(double v) const {
    if (v == 0.0) return 0.0;
    if (v < 0.0) return -quantize(-v);

    if (v > covered_high() || v <= covered_low()) {
        throw OutOfRange("quantize: value outside covered range");
    }
    // find the smallest index (largest level) whose lower endpoint is below v;
    // with the adjacency condition this is the unique interval containing v
    long lo = j_min(), hi = j_max();
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (lower(mid) < v) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return level(lo);
}

namespace {

LevelTable generate(const QuantizerSpec& spec, double cover_low, double cover_high) {
    spec.validate();
    if (!(cover_low > 0.0) || !(cover_high > 0.0)) {
        throw ConfigError("build_levels: cover bounds must be positive");
    }

    // downward from pi0 (j = 0, 1, 2, ...)
    std::vector<double> down_levels{spec.pi0};
    std::vector<double> down_gammas{spec.gamma_at(0)};
    {
        double pi = spec.pi0;
        long j = 0;
        while (pi / (1.0 - spec.gamma_at(j)) > cover_low) {
            if (j - 0 >= spec.max_levels) {
                throw CapExceeded("build_levels: downward level cap exceeded");
            }
            const double g_next = spec.gamma_at(j + 1);
            pi = pi * (1.0 - g_next) / (1.0 + spec.gamma_at(j));
            ++j;
            down_levels.push_back(pi);
            down_gammas.push_back(g_next);
        }
    }

    // upward from pi0 (j = -1, -2, ...)
    std::vector<double> up_levels;
    std::vector<double> up_gammas;
    {
        double pi = spec.pi0;
        long j = 0;
        while (pi / (1.0 - spec.gamma_at(j)) < cover_high) {
            if (-j >= spec.max_levels) {
                throw CapExceeded("build_levels: upward level cap exceeded");
            }
            const double g_prev = spec.gamma_at(j - 1);
            pi = pi * (1.0 + g_prev) / (1.0 - spec.gamma_at(j));
            --j;
            up_levels.push_back(pi);
            up_gammas.push_back(g_prev);
        }
    }

    const long j_min = -static_cast<long>(up_levels.size());
    std::vector<double> levels;
    std::vector<double> gammas;
    levels.reserve(up_levels.size() + down_levels.size());
    gammas.reserve(levels.capacity());
    for (std::size_t i = up_levels.size(); i-- > 0;) {
        levels.push_back(up_levels[i]);
        gammas.push_back(up_gammas[i]);
    }
    levels.insert(levels.end(), down_levels.begin(), down_levels.end());
    gammas.insert(gammas.end(), down_gammas.begin(), down_gammas.end());

    return LevelTable(std::move(levels), std::move(gammas), j_min);
}

}  // namespace

LevelTable build_levels(const QuantizerSpec& spec, double cover) {
    if (!(cover > 0.0)) throw ConfigError("build_levels: cover must be positive");
    return generate(spec, spec.pi0 * spec.pi0 / cover, cover);
}

LevelTable build_levels_range(const QuantizerSpec& spec, double cover_low, double cover_high) {
    if (!(cover_low > 0.0 && cover_high >= cover_low)) {
        throw ConfigError("build_levels_range: need 0 < cover_low <= cover_high");
    }
    return generate(spec, cover_low, cover_high);
}

}  // namespace fintstab
