#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/correlation.hpp"
#include "fxmst/currency.hpp"
#include "fxmst/errors.hpp"

namespace fxmst {

/// Distance grid d(A,B) = sqrt((1 - C_AB) / 2), in [0, 1] with zero
/// diagonal. Perfectly correlated series sit at distance 0, perfectly
/// anticorrelated ones at 1.
class DistanceMatrix {
public:
    DistanceMatrix(CurrencyCode base,
                   std::vector<CurrencyCode> currencies,
                   std::vector<double> entries,
                   std::vector<bool> degenerate)
        : base_(std::move(base)),
          currencies_(std::move(currencies)),
          entries_(std::move(entries)),
          degenerate_(std::move(degenerate)) {
        const std::size_t n = currencies_.size();
        if (entries_.size() != n * n || degenerate_.size() != n) {
            throw ValidationError("distance grid does not match N x N");
        }
    }

    const CurrencyCode& base() const noexcept { return base_; }
    const std::vector<CurrencyCode>& currencies() const noexcept { return currencies_; }
    std::size_t size() const noexcept { return currencies_.size(); }

    double at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    bool is_degenerate(std::size_t i) const { return degenerate_[i]; }
    const std::vector<bool>& degenerate_rows() const noexcept { return degenerate_; }

private:
    CurrencyCode base_;
    std::vector<CurrencyCode> currencies_;
    std::vector<double> entries_;
    std::vector<bool> degenerate_;
};

/// Entrywise transform of the correlation matrix. Correlations may stray
/// outside [-1, 1] by at most 1e-12 (clamped); larger excursions are an
/// error.
inline DistanceMatrix distances(const CorrelationMatrix& matrix) {
    const std::size_t n = matrix.size();
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double c = matrix.at(i, j);
            if (c < -1.0 - 1e-12 || c > 1.0 + 1e-12) {
                throw ValidationError("correlation entry " + std::to_string(c) + " at (" +
                                      matrix.currencies()[i].str() + "," +
                                      matrix.currencies()[j].str() + ") outside [-1, 1]");
            }
            c = std::clamp(c, -1.0, 1.0);
            const double d = std::sqrt((1.0 - c) / 2.0);
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    return DistanceMatrix(matrix.base(), matrix.currencies(), std::move(entries),
                          matrix.degenerate_rows());
}

} // namespace fxmst
