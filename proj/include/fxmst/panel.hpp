#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fxmst/currency.hpp"
#include "fxmst/errors.hpp"

namespace fxmst {

/// Time-aligned panel of exchange rates against one base currency.
///
/// Holds N = n - 1 series (the base itself is the unit of account and has
/// no series) on a shared, strictly increasing timestamp grid of T + 1
/// trading days. Every rate is finite and strictly positive. Immutable
/// after construction.
class RatePanel {
public:
    RatePanel(CurrencyCode base,
              std::vector<CurrencyCode> currencies,
              std::vector<std::string> timestamps,
              std::vector<double> rates)
        : base_(std::move(base)),
          currencies_(std::move(currencies)),
          timestamps_(std::move(timestamps)),
          rates_(std::move(rates)) {
        if (currencies_.empty()) {
            throw ValidationError("panel needs at least one currency besides the base");
        }
        if (timestamps_.empty()) {
            throw ValidationError("panel needs at least one timestamp");
        }
        if (rates_.size() != timestamps_.size() * currencies_.size()) {
            throw ValidationError("rate grid size does not match timestamps x currencies");
        }
        for (std::size_t i = 0; i + 1 < timestamps_.size(); ++i) {
            if (!(timestamps_[i] < timestamps_[i + 1])) {
                throw ValidationError("timestamps must be strictly increasing (at '" +
                                      timestamps_[i + 1] + "')");
            }
        }
        for (std::size_t i = 0; i < currencies_.size(); ++i) {
            if (currencies_[i] == base_) {
                throw ValidationError("base currency " + base_.str() +
                                      " may not appear as a panel column");
            }
            index_.emplace(currencies_[i].str(), i);
        }
        if (index_.size() != currencies_.size()) {
            throw ValidationError("duplicate currency column in panel");
        }
        for (double r : rates_) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw ValidationError("all rates must be finite and > 0");
            }
        }
    }

    const CurrencyCode& base() const noexcept { return base_; }
    const std::vector<CurrencyCode>& currencies() const noexcept { return currencies_; }
    const std::vector<std::string>& timestamps() const noexcept { return timestamps_; }

    /// N, the number of series (base excluded).
    std::size_t currency_count() const noexcept { return currencies_.size(); }
    /// T + 1, the number of trading days on the grid.
    std::size_t sample_count() const noexcept { return timestamps_.size(); }

    double rate(std::size_t t, std::size_t column) const {
        return rates_[t * currencies_.size() + column];
    }

    bool contains(const CurrencyCode& code) const {
        return code == base_ || index_.count(code.str()) > 0;
    }

    std::size_t column_of(const CurrencyCode& code) const {
        auto it = index_.find(code.str());
        if (it == index_.end()) {
            throw UnknownCurrencyError("currency " + code.str() + " not in panel (base " +
                                       base_.str() + ")");
        }
        return it->second;
    }

    /// ln of the rate of `code` versus the base; 0 for the base itself.
    double log_rate(std::size_t t, const CurrencyCode& code) const {
        if (code == base_) return 0.0;
        return std::log(rate(t, column_of(code)));
    }

private:
    CurrencyCode base_;
    std::vector<CurrencyCode> currencies_;
    std::vector<std::string> timestamps_;
    std::vector<double> rates_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Re-expresses every series in terms of `new_base` via cross rates:
/// x_A^new(t) = x_A^old(t) / x_new^old(t). The old base enters as a column
/// with rate 1 / x_new^old(t), so N stays n - 1. The new base's column slot
/// is reused for the old base, which makes a round trip reproduce the
/// original column order.
inline RatePanel rebase(const RatePanel& panel, const CurrencyCode& new_base) {
    if (new_base == panel.base()) {
        return panel;
    }
    const std::size_t pivot = panel.column_of(new_base); // throws if unknown
    const std::size_t n_cols = panel.currency_count();
    const std::size_t n_rows = panel.sample_count();

    std::vector<CurrencyCode> currencies = panel.currencies();
    currencies[pivot] = panel.base();

    std::vector<double> rates(n_rows * n_cols);
    for (std::size_t t = 0; t < n_rows; ++t) {
        const double pivot_rate = panel.rate(t, pivot);
        for (std::size_t j = 0; j < n_cols; ++j) {
            rates[t * n_cols + j] =
                (j == pivot) ? 1.0 / pivot_rate : panel.rate(t, j) / pivot_rate;
        }
    }
    return RatePanel(new_base, std::move(currencies), panel.timestamps(), std::move(rates));
}

} // namespace fxmst
