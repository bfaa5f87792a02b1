#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "fxmst/errors.hpp"
#include "fxmst/panel.hpp"

namespace fxmst {

/// What to do with a timestamp whose one-day log-change exceeds the jump
/// threshold.
enum class JumpPolicy {
    DropDay,     ///< remove the timestamp from every series (keeps alignment)
    Clip,        ///< clamp the offending value to threshold * sigma
    Interpolate, ///< replace it with the geometric mean of its neighbours
};

inline std::string_view to_string(JumpPolicy p) {
    switch (p) {
    case JumpPolicy::DropDay: return "drop-day";
    case JumpPolicy::Clip: return "clip";
    case JumpPolicy::Interpolate: return "interpolate";
    }
    return "?";
}

struct CleaningConfig {
    /// Flag a day when its one-day |log-change| exceeds this many standard
    /// deviations of the series' own one-day log-changes.
    double jump_threshold = 5.0;
    JumpPolicy policy = JumpPolicy::DropDay;
    /// Reject panels left with fewer timestamps than this.
    std::size_t min_length = 2;
    /// Safety cap on drop-day passes (each pass removes at least one day).
    std::size_t max_passes = 1000;

    void validate() const {
        if (!(jump_threshold > 0.0)) {
            throw ValidationError("jump threshold must be > 0");
        }
        if (min_length < 2) {
            throw ValidationError("minimum length must be at least 2");
        }
    }
};

namespace detail {

// sigma of one-day log-changes, population convention. The caller skips
// flagging when fewer than 2 changes exist or sigma is 0 (a uniform drift
// has no outliers relative to itself).
inline double log_change_sigma(const std::vector<double>& changes) {
    if (changes.size() < 2) return 0.0;
    double mean = 0.0;
    for (double c : changes) mean += c;
    mean /= static_cast<double>(changes.size());
    double ss = 0.0;
    for (double c : changes) ss += (c - mean) * (c - mean);
    return std::sqrt(ss / static_cast<double>(changes.size()));
}

inline std::vector<double> one_day_log_changes(const RatePanel& panel, std::size_t column) {
    std::vector<double> changes(panel.sample_count() - 1);
    for (std::size_t t = 0; t + 1 < panel.sample_count(); ++t) {
        changes[t] = std::log(panel.rate(t + 1, column)) - std::log(panel.rate(t, column));
    }
    return changes;
}

inline RatePanel drop_timestamps(const RatePanel& panel, const std::set<std::size_t>& dropped) {
    const std::size_t n_cols = panel.currency_count();
    std::vector<std::string> timestamps;
    std::vector<double> rates;
    timestamps.reserve(panel.sample_count() - dropped.size());
    rates.reserve((panel.sample_count() - dropped.size()) * n_cols);
    for (std::size_t t = 0; t < panel.sample_count(); ++t) {
        if (dropped.count(t)) continue;
        timestamps.push_back(panel.timestamps()[t]);
        for (std::size_t j = 0; j < n_cols; ++j) rates.push_back(panel.rate(t, j));
    }
    return RatePanel(panel.base(), panel.currencies(), std::move(timestamps), std::move(rates));
}

} // namespace detail

/// Removes or repairs jumps larger than `jump_threshold` sigma of each
/// series' own one-day log-changes. Sigma is computed globally per series.
///
/// The default drop-day policy removes flagged days from every series and
/// iterates until no day is flagged, so cleaning an already-clean panel is
/// the identity and cleaning twice equals cleaning once. Clip and
/// interpolate repair in a single pass from the pre-repair values.
inline RatePanel clean_panel(const RatePanel& panel, const CleaningConfig& config = {}) {
    config.validate();

    if (config.policy == JumpPolicy::DropDay) {
        RatePanel current = panel;
        for (std::size_t pass = 0; pass < config.max_passes; ++pass) {
            if (current.sample_count() < 3) return current;
            std::set<std::size_t> dropped;
            for (std::size_t j = 0; j < current.currency_count(); ++j) {
                const auto changes = detail::one_day_log_changes(current, j);
                const double sigma = detail::log_change_sigma(changes);
                if (sigma <= 0.0) continue;
                for (std::size_t t = 0; t < changes.size(); ++t) {
                    if (std::fabs(changes[t]) > config.jump_threshold * sigma) {
                        dropped.insert(t + 1); // the day the jump lands on
                    }
                }
            }
            if (dropped.empty()) return current;
            if (current.sample_count() - dropped.size() < config.min_length) {
                throw InsufficientDataError(
                    "jump filtering would leave " +
                    std::to_string(current.sample_count() - dropped.size()) +
                    " timestamps, below the minimum of " + std::to_string(config.min_length));
            }
            current = detail::drop_timestamps(current, dropped);
        }
        throw NumericalError("jump filtering did not reach a fixed point within " +
                                 std::to_string(config.max_passes) + " passes",
                             0.0);
    }

    // Clip / interpolate: one pass, flags and sigma from the original data.
    const std::size_t n_cols = panel.currency_count();
    const std::size_t n_rows = panel.sample_count();
    std::vector<double> rates(n_rows * n_cols);
    for (std::size_t t = 0; t < n_rows; ++t) {
        for (std::size_t j = 0; j < n_cols; ++j) rates[t * n_cols + j] = panel.rate(t, j);
    }
    if (n_rows < 3) {
        return RatePanel(panel.base(), panel.currencies(), panel.timestamps(), std::move(rates));
    }

    for (std::size_t j = 0; j < n_cols; ++j) {
        const auto changes = detail::one_day_log_changes(panel, j);
        const double sigma = detail::log_change_sigma(changes);
        if (sigma <= 0.0) continue;
        const double cap = config.jump_threshold * sigma;
        for (std::size_t t = 0; t < changes.size(); ++t) {
            if (std::fabs(changes[t]) <= cap) continue;
            const std::size_t row = t + 1;
            double repaired;
            if (config.policy == JumpPolicy::Interpolate && row + 1 < n_rows) {
                repaired = std::sqrt(panel.rate(row - 1, j) * panel.rate(row + 1, j));
            } else {
                const double sign = changes[t] > 0.0 ? 1.0 : -1.0;
                repaired = panel.rate(row - 1, j) * std::exp(sign * cap);
            }
            rates[row * n_cols + j] = repaired;
        }
    }
    return RatePanel(panel.base(), panel.currencies(), panel.timestamps(), std::move(rates));
}

} // namespace fxmst
