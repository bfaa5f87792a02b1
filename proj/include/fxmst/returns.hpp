#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/currency.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/panel.hpp"

namespace fxmst {

/// Log-returns of every panel series at horizon `tau`, raw and normalized.
///
/// Row A of the raw grid is G_A(t) = ln x_A(t + tau) - ln x_A(t); the
/// normalized grid standardizes each row to mean 0 and standard deviation 1
/// (population convention, which makes the correlation matrix have unit
/// diagonal and trace N). A constant series has zero raw returns; its
/// normalized row is all zeros and the row is flagged degenerate.
class ReturnMatrix {
public:
    ReturnMatrix(CurrencyCode base,
                 std::vector<CurrencyCode> currencies,
                 int tau,
                 std::size_t samples,
                 std::vector<double> raw,
                 std::vector<double> normalized,
                 std::vector<bool> degenerate)
        : base_(std::move(base)),
          currencies_(std::move(currencies)),
          tau_(tau),
          samples_(samples),
          raw_(std::move(raw)),
          normalized_(std::move(normalized)),
          degenerate_(std::move(degenerate)) {
        const std::size_t n = currencies_.size();
        if (raw_.size() != n * samples_ || normalized_.size() != n * samples_ ||
            degenerate_.size() != n) {
            throw ValidationError("return matrix grids do not match N x T");
        }
    }

    const CurrencyCode& base() const noexcept { return base_; }
    const std::vector<CurrencyCode>& currencies() const noexcept { return currencies_; }
    int tau() const noexcept { return tau_; }

    /// N, the number of rows.
    std::size_t row_count() const noexcept { return currencies_.size(); }
    /// T, the number of return observations per row.
    std::size_t sample_count() const noexcept { return samples_; }

    double raw_at(std::size_t row, std::size_t t) const { return raw_[row * samples_ + t]; }
    double normalized_at(std::size_t row, std::size_t t) const {
        return normalized_[row * samples_ + t];
    }
    const std::vector<double>& raw() const noexcept { return raw_; }
    const std::vector<double>& normalized() const noexcept { return normalized_; }

    bool is_degenerate(std::size_t row) const { return degenerate_[row]; }
    const std::vector<bool>& degenerate_rows() const noexcept { return degenerate_; }

private:
    CurrencyCode base_;
    std::vector<CurrencyCode> currencies_;
    int tau_;
    std::size_t samples_;
    std::vector<double> raw_;
    std::vector<double> normalized_;
    std::vector<bool> degenerate_;
};

/// Log-returns of every series at horizon `tau` trading days.
inline ReturnMatrix log_returns(const RatePanel& panel, int tau = 1) {
    if (tau < 1) throw ValidationError("return horizon tau must be >= 1");
    if (panel.sample_count() <= static_cast<std::size_t>(tau)) {
        throw InsufficientDataError("panel has " + std::to_string(panel.sample_count()) +
                                    " timestamps, need more than tau = " + std::to_string(tau));
    }
    const std::size_t n = panel.currency_count();
    const std::size_t samples = panel.sample_count() - static_cast<std::size_t>(tau);

    std::vector<double> raw(n * samples);
    std::vector<double> normalized(n * samples);
    std::vector<bool> degenerate(n, false);

    for (std::size_t row = 0; row < n; ++row) {
        double* g = &raw[row * samples];
        for (std::size_t t = 0; t < samples; ++t) {
            g[t] = std::log(panel.rate(t + static_cast<std::size_t>(tau), row)) -
                   std::log(panel.rate(t, row));
        }
        double mean = 0.0;
        for (std::size_t t = 0; t < samples; ++t) mean += g[t];
        mean /= static_cast<double>(samples);
        double variance = 0.0;
        for (std::size_t t = 0; t < samples; ++t) variance += (g[t] - mean) * (g[t] - mean);
        variance /= static_cast<double>(samples);
        const double sd = std::sqrt(variance);

        double* out = &normalized[row * samples];
        if (sd <= 0.0) {
            degenerate[row] = true;
            for (std::size_t t = 0; t < samples; ++t) out[t] = 0.0;
        } else {
            for (std::size_t t = 0; t < samples; ++t) out[t] = (g[t] - mean) / sd;
        }
    }
    return ReturnMatrix(panel.base(), panel.currencies(), tau, samples, std::move(raw),
                        std::move(normalized), std::move(degenerate));
}

/// Residual of three independently supplied return legs, max_t of
/// |g_ab + g_bc + g_ca|. Use this form when the legs come from separate
/// quote sources rather than from one panel's cross rates.
inline double triangle_residual(std::span<const double> g_ab,
                                std::span<const double> g_bc,
                                std::span<const double> g_ca) {
    if (g_ab.size() != g_bc.size() || g_bc.size() != g_ca.size()) {
        throw ValidationError("triangle legs must have equal length");
    }
    if (g_ab.empty()) throw InsufficientDataError("triangle legs are empty");
    double worst = 0.0;
    for (std::size_t t = 0; t < g_ab.size(); ++t) {
        worst = std::max(worst, std::fabs(g_ab[t] + g_bc[t] + g_ca[t]));
    }
    return worst;
}

/// Largest absolute triangle-rule violation max_t |G_a^b + G_b^c + G_c^a|
/// at horizon `tau`. Each leg is computed from the panel's cross rates, so
/// the residual is pure floating-point noise (<= 1e-10) whenever the rates
/// are cross-derived, and measures quote inconsistency otherwise.
inline double triangle_residual(const RatePanel& panel,
                                const CurrencyCode& a,
                                const CurrencyCode& b,
                                const CurrencyCode& c,
                                int tau = 1) {
    if (a == b || b == c || a == c) {
        throw ValidationError("triangle currencies must be distinct");
    }
    for (const CurrencyCode* code : {&a, &b, &c}) {
        if (!panel.contains(*code)) {
            throw UnknownCurrencyError("currency " + code->str() + " not expressible in panel");
        }
    }
    if (tau < 1) throw ValidationError("return horizon tau must be >= 1");
    if (panel.sample_count() <= static_cast<std::size_t>(tau)) {
        throw InsufficientDataError("panel too short for tau = " + std::to_string(tau));
    }

    // G_x^y(t) = [L_x(t+tau) - L_y(t+tau)] - [L_x(t) - L_y(t)] with
    // L = log rate versus the panel base.
    const std::size_t samples = panel.sample_count() - static_cast<std::size_t>(tau);
    double worst = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        const std::size_t u = t + static_cast<std::size_t>(tau);
        const double la0 = panel.log_rate(t, a), la1 = panel.log_rate(u, a);
        const double lb0 = panel.log_rate(t, b), lb1 = panel.log_rate(u, b);
        const double lc0 = panel.log_rate(t, c), lc1 = panel.log_rate(u, c);
        const double g_ab = (la1 - lb1) - (la0 - lb0);
        const double g_bc = (lb1 - lc1) - (lb0 - lc0);
        const double g_ca = (lc1 - la1) - (lc0 - la0);
        worst = std::max(worst, std::fabs(g_ab + g_bc + g_ca));
    }
    return worst;
}

} // namespace fxmst
