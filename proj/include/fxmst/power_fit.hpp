#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/degree.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/mst.hpp"

namespace fxmst {

enum class FitQuality { Good, Poor };

inline std::string_view to_string(FitQuality q) {
    return q == FitQuality::Good ? "GOOD" : "POOR";
}

struct FitConfig {
    /// Relative error Delta(alpha)/alpha above which a fit is flagged POOR.
    double poor_threshold = 0.09;
    /// Minimum number of distinct support points.
    std::size_t min_points = 3;

    void validate() const {
        if (!(poor_threshold > 0.0)) throw ValidationError("poor threshold must be > 0");
        if (min_points < 3) throw ValidationError("a slope with error bar needs >= 3 points");
    }
};

/// Inverse-power fit N(K) ~ amplitude * K^(-alpha).
///
/// alpha comes from ordinary least squares of ln N(K) on ln K;
/// delta_alpha is the standard error of the slope from the OLS residual
/// variance. amplitude is exp(intercept); amplitude_normalized is the
/// prefactor of the normalized distribution F(K) = N(K)/N (NaN when the
/// fit was made from bare points with no node count attached).
struct PowerFit {
    double alpha = 0.0;
    double delta_alpha = 0.0;
    double relative_error = 0.0;
    double amplitude = 0.0;
    double amplitude_normalized = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<double, double>> points_used;
    FitQuality quality = FitQuality::Good;
};

/// OLS power fit on bare (K, value) points, value > 0, K > 0.
inline PowerFit fit_power_points(std::span<const std::pair<double, double>> points,
                                 const FitConfig& config = {}) {
    config.validate();
    std::vector<std::pair<double, double>> support;
    for (const auto& [k, value] : points) {
        if (k > 0.0 && value > 0.0) support.emplace_back(k, value);
    }
    if (support.size() < config.min_points) {
        throw FitError("power fit needs at least " + std::to_string(config.min_points) +
                       " support points, got " + std::to_string(support.size()));
    }

    const double m = static_cast<double>(support.size());
    double sum_x = 0.0, sum_y = 0.0;
    for (const auto& [k, value] : support) {
        sum_x += std::log(k);
        sum_y += std::log(value);
    }
    const double mean_x = sum_x / m;
    const double mean_y = sum_y / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [k, value] : support) {
        const double dx = std::log(k) - mean_x;
        const double dy = std::log(value) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw FitError("fit support has no spread in K");

    const double slope = sxy / sxx;
    if (!(slope < 0.0)) {
        throw FitError("data does not decay with K (slope " + std::to_string(slope) +
                       "), no inverse-power fit");
    }
    const double intercept = mean_y - slope * mean_x;
    // Residual sum of squares, clamped against cancellation on exact data.
    const double ss_res = std::max(0.0, syy - slope * sxy);
    const double slope_se =
        support.size() > 2 ? std::sqrt(ss_res / ((m - 2.0) * sxx)) : 0.0;

    PowerFit fit;
    fit.alpha = -slope;
    fit.delta_alpha = slope_se;
    fit.relative_error = fit.delta_alpha / fit.alpha;
    fit.amplitude = std::exp(intercept);
    fit.points_used = std::move(support);
    fit.quality = fit.relative_error > config.poor_threshold ? FitQuality::Poor : FitQuality::Good;
    return fit;
}

/// Power fit of the cumulative multiplicity distribution over every K in
/// [1, k_max] (the cumulative is positive on the whole range, so no gap
/// handling is needed even though the raw counts have gaps).
inline PowerFit fit_power(const DegreeDistribution& dist, const FitConfig& config = {}) {
    std::vector<std::pair<double, double>> points;
    points.reserve(dist.cumulative.size());
    for (const auto& [k, nk] : dist.cumulative) {
        points.emplace_back(static_cast<double>(k), static_cast<double>(nk));
    }
    PowerFit fit = fit_power_points(points, config);
    fit.amplitude_normalized = fit.amplitude / static_cast<double>(dist.n_total);
    return fit;
}

/// Error floor imposed by the integer values of N(K): the best achievable
/// average deviation from a smooth fit is delta = 1/4 per point, so the
/// normalized distribution cannot be fitted better than delta_f = 1/(4N)
/// on average. Since F(K) <= 1, delta_f is also the floor on the relative
/// error.
struct DiscretenessBound {
    double delta_mean = 0.25;
    double delta_f = 0.0;
    double relative_floor = 0.0;
};

inline DiscretenessBound discreteness_floor(std::size_t n_total) {
    if (n_total < 1) throw ValidationError("node count must be >= 1");
    DiscretenessBound bound;
    bound.delta_f = 0.25 / static_cast<double>(n_total);
    bound.relative_floor = bound.delta_f;
    return bound;
}

/// One tree plus the maximal eigenvalue of the correlation matrix it came
/// from; input to group aggregation.
struct GroupFitInput {
    const MstTree* tree = nullptr;
    double lambda_max = 0.0;
};

/// One aggregated row: arithmetic means of alpha, delta_alpha and
/// lambda_max across the group members.
struct GroupFitRow {
    std::string label;
    std::size_t members = 0;
    double alpha = 0.0;
    double delta_alpha = 0.0;
    double relative_error = 0.0;
    double lambda_max = 0.0;
};

inline GroupFitRow group_fit(std::span<const GroupFitInput> members,
                             std::string label,
                             const FitConfig& config = {}) {
    if (members.empty()) throw InsufficientDataError("group '" + label + "' has no members");
    GroupFitRow row;
    row.label = std::move(label);
    row.members = members.size();
    for (const auto& member : members) {
        const PowerFit fit = fit_power(degree_distribution(*member.tree), config);
        row.alpha += fit.alpha;
        row.delta_alpha += fit.delta_alpha;
        row.lambda_max += member.lambda_max;
    }
    const double m = static_cast<double>(members.size());
    row.alpha /= m;
    row.delta_alpha /= m;
    row.lambda_max /= m;
    row.relative_error = row.delta_alpha / row.alpha;
    return row;
}

} // namespace fxmst
