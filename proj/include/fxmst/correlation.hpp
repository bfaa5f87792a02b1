#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/currency.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/returns.hpp"

namespace fxmst {

/// Symmetric N x N correlation matrix of the normalized returns,
/// C = (1/T) M M~. Unit diagonal, entries in [-1, 1], trace N.
/// Rows flagged degenerate upstream keep their flag: such a series
/// correlates 0 with everything and 1 with itself.
class CorrelationMatrix {
public:
    CorrelationMatrix(CurrencyCode base,
                      std::vector<CurrencyCode> currencies,
                      std::size_t sample_count,
                      std::vector<double> entries,
                      std::vector<bool> degenerate)
        : base_(std::move(base)),
          currencies_(std::move(currencies)),
          samples_(sample_count),
          entries_(std::move(entries)),
          degenerate_(std::move(degenerate)) {
        const std::size_t n = currencies_.size();
        if (entries_.size() != n * n || degenerate_.size() != n) {
            throw ValidationError("correlation grid does not match N x N");
        }
    }

    const CurrencyCode& base() const noexcept { return base_; }
    const std::vector<CurrencyCode>& currencies() const noexcept { return currencies_; }
    std::size_t size() const noexcept { return currencies_.size(); }
    std::size_t sample_count() const noexcept { return samples_; }

    double at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    bool is_degenerate(std::size_t i) const { return degenerate_[i]; }
    const std::vector<bool>& degenerate_rows() const noexcept { return degenerate_; }

    double trace() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < size(); ++i) sum += at(i, i);
        return sum;
    }

private:
    CurrencyCode base_;
    std::vector<CurrencyCode> currencies_;
    std::size_t samples_;
    std::vector<double> entries_;
    std::vector<bool> degenerate_;
};

/// C = (1/T) M M~ on the normalized return grid. Each pair is computed
/// once and mirrored, the diagonal is exactly 1, and rounding beyond
/// [-1, 1] is clamped (it cannot exceed 1 by more than machine epsilon for
/// standardized rows).
inline CorrelationMatrix correlation(const ReturnMatrix& returns) {
    const std::size_t n = returns.row_count();
    const std::size_t samples = returns.sample_count();
    if (n < 2) throw InsufficientDataError("correlation needs at least 2 series");
    if (samples < 2) throw InsufficientDataError("correlation needs at least 2 observations");

    std::vector<double> entries(n * n, 0.0);
    const double inv_t = 1.0 / static_cast<double>(samples);
    for (std::size_t i = 0; i < n; ++i) {
        entries[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double value = 0.0;
            if (!returns.is_degenerate(i) && !returns.is_degenerate(j)) {
                double dot = 0.0;
                for (std::size_t t = 0; t < samples; ++t) {
                    dot += returns.normalized_at(i, t) * returns.normalized_at(j, t);
                }
                value = std::clamp(dot * inv_t, -1.0, 1.0);
            }
            entries[i * n + j] = value;
            entries[j * n + i] = value;
        }
    }
    return CorrelationMatrix(returns.base(), returns.currencies(), samples, std::move(entries),
                             returns.degenerate_rows());
}

} // namespace fxmst
