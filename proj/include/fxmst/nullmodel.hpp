#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/currency.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/panel.hpp"
#include "fxmst/returns.hpp"
#include "fxmst/rng.hpp"

namespace fxmst {

/// Destroys all temporal correlations: every row of the return matrix is
/// independently permuted (Fisher-Yates), raw and normalized grids with
/// the same permutation, so each row's value multiset, mean and variance
/// are untouched. Row `i` draws from substream `i` of the seed, making the
/// result independent of processing order.
inline ReturnMatrix shuffle_returns(const ReturnMatrix& returns, RandomSeed seed) {
    const std::size_t n = returns.row_count();
    const std::size_t samples = returns.sample_count();
    std::vector<double> raw(n * samples);
    std::vector<double> normalized(n * samples);
    for (std::size_t row = 0; row < n; ++row) {
        std::vector<std::size_t> permutation(samples);
        std::iota(permutation.begin(), permutation.end(), std::size_t{0});
        Rng rng = Rng::substream(seed, row);
        rng.shuffle(permutation);
        for (std::size_t t = 0; t < samples; ++t) {
            raw[row * samples + t] = returns.raw_at(row, permutation[t]);
            normalized[row * samples + t] = returns.normalized_at(row, permutation[t]);
        }
    }
    return ReturnMatrix(returns.base(), returns.currencies(), returns.tau(), samples,
                        std::move(raw), std::move(normalized),
                        returns.degenerate_rows());
}

/// How the fictitious currency's quote against its anchor is generated.
enum class FictitiousModel {
    /// Log-rate is a Gaussian random walk: returns are i.i.d. Gaussian.
    LogRandomWalk,
    /// Rate level itself is i.i.d. lognormal noise around the anchor.
    IidLevels,
};

/// Appends currency FIC whose rate against `anchor` is Gaussian noise with
/// step deviation `sigma`; rates against everything else follow via the
/// anchor's cross rates, so the extended panel satisfies the triangle rule
/// by construction.
inline RatePanel fictitious_currency(const RatePanel& panel,
                                     const CurrencyCode& anchor,
                                     double sigma,
                                     RandomSeed seed,
                                     FictitiousModel model = FictitiousModel::LogRandomWalk) {
    if (!panel.contains(anchor)) {
        throw UnknownCurrencyError("anchor currency " + anchor.str() + " not in panel");
    }
    if (panel.contains(fictitious_code())) {
        throw ValidationError("panel already contains " + fictitious_code().str());
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("fictitious noise sigma must be finite and > 0");
    }

    const std::size_t n_rows = panel.sample_count();
    const std::size_t n_cols = panel.currency_count();
    Rng rng(seed);

    std::vector<double> log_vs_anchor(n_rows);
    if (model == FictitiousModel::LogRandomWalk) {
        double level = 0.0;
        for (std::size_t t = 0; t < n_rows; ++t) {
            log_vs_anchor[t] = level;
            level += sigma * rng.gaussian();
        }
    } else {
        for (std::size_t t = 0; t < n_rows; ++t) log_vs_anchor[t] = sigma * rng.gaussian();
    }

    std::vector<CurrencyCode> currencies = panel.currencies();
    currencies.push_back(fictitious_code());
    std::vector<double> rates(n_rows * (n_cols + 1));
    for (std::size_t t = 0; t < n_rows; ++t) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            rates[t * (n_cols + 1) + j] = panel.rate(t, j);
        }
        const double anchor_rate =
            anchor == panel.base() ? 1.0 : panel.rate(t, panel.column_of(anchor));
        rates[t * (n_cols + 1) + n_cols] = std::exp(log_vs_anchor[t]) * anchor_rate;
    }
    return RatePanel(panel.base(), std::move(currencies), panel.timestamps(), std::move(rates));
}

/// Median across series of the population standard deviation of one-day
/// log-returns; the default noise scale for the fictitious currency.
inline double median_return_stdev(const RatePanel& panel) {
    if (panel.sample_count() < 2) {
        throw InsufficientDataError("need at least 2 timestamps to measure return scale");
    }
    std::vector<double> deviations;
    deviations.reserve(panel.currency_count());
    const std::size_t samples = panel.sample_count() - 1;
    for (std::size_t j = 0; j < panel.currency_count(); ++j) {
        double mean = 0.0;
        std::vector<double> changes(samples);
        for (std::size_t t = 0; t < samples; ++t) {
            changes[t] = std::log(panel.rate(t + 1, j)) - std::log(panel.rate(t, j));
            mean += changes[t];
        }
        mean /= static_cast<double>(samples);
        double ss = 0.0;
        for (double c : changes) ss += (c - mean) * (c - mean);
        deviations.push_back(std::sqrt(ss / static_cast<double>(samples)));
    }
    std::sort(deviations.begin(), deviations.end());
    const std::size_t m = deviations.size();
    return m % 2 == 1 ? deviations[m / 2]
                      : 0.5 * (deviations[m / 2 - 1] + deviations[m / 2]);
}

/// One equicorrelated group of currencies riding a shared bloc factor.
struct Bloc {
    std::size_t size = 0;
    double intra_correlation = 0.0;
};

/// Synthetic market blueprint. The generated panel quotes every currency
/// against a reference REF and contains:
///   - HUB, the carrier of the global market factor;
///   - bloc members B<b><i>, loading a bloc factor with weight
///     sqrt(intra_correlation); the bloc factor itself loads the global
///     factor with weight hub_strength;
///   - typical currencies T<ii>, loading the global factor directly with
///     weight hub_strength;
///   - drifters D<ii>, independent random walks with a deterministic
///     trend and inflated volatility.
/// Counts satisfy 2 + sum(bloc sizes) + drifters <= n_currencies (REF and
/// HUB take one slot each); the remainder become typicals.
struct MarketModel {
    std::size_t n_currencies = 60;
    double hub_strength = 0.6;
    std::vector<Bloc> blocs;
    std::size_t drifters = 0;
    std::size_t T = 1657;

    double volatility = 0.007;
    double drifter_vol_multiplier = 2.5;
    double drifter_drift = 5e-4;

    std::size_t typicals() const {
        std::size_t used = 2 + drifters; // REF + HUB
        for (const auto& bloc : blocs) used += bloc.size;
        return n_currencies - used;
    }

    void validate() const {
        if (n_currencies < 3) throw ValidationError("market needs at least 3 currencies");
        if (!(hub_strength >= 0.0 && hub_strength <= 1.0)) {
            throw ValidationError("hub strength must lie in [0, 1]");
        }
        if (T < 2) throw ValidationError("market needs T >= 2 steps");
        if (!(volatility > 0.0)) throw ValidationError("volatility must be > 0");
        if (!(drifter_vol_multiplier > 0.0)) {
            throw ValidationError("drifter volatility multiplier must be > 0");
        }
        if (blocs.size() > 26) throw ValidationError("at most 26 blocs supported");
        std::size_t used = 2 + drifters;
        for (const auto& bloc : blocs) {
            if (bloc.size < 2) throw ValidationError("blocs need at least 2 members");
            if (bloc.size > 26) throw ValidationError("bloc size is capped at 26");
            if (!(bloc.intra_correlation >= 0.0 && bloc.intra_correlation <= 1.0)) {
                throw ValidationError("intra-bloc correlation must lie in [0, 1]");
            }
            used += bloc.size;
        }
        if (used > n_currencies) {
            throw ValidationError("blocs + drifters + hub exceed the currency count");
        }
        if (n_currencies - used > 676 || drifters > 676) {
            throw ValidationError("too many currencies for the code naming scheme");
        }
    }

    static MarketModel from_file(const std::filesystem::path& path);
};

namespace detail {

inline std::string two_letter(std::size_t i) {
    std::string s(2, 'A');
    s[0] = static_cast<char>('A' + i / 26);
    s[1] = static_cast<char>('A' + i % 26);
    return s;
}

/// Consecutive weekdays starting Monday 1998-12-07.
inline std::vector<std::string> weekday_timestamps(std::size_t count) {
    using namespace std::chrono;
    std::vector<std::string> out;
    out.reserve(count);
    sys_days day{year{1998} / December / 7};
    while (out.size() < count) {
        const weekday wd{day};
        if (wd != Saturday && wd != Sunday) {
            const year_month_day ymd{day};
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                          unsigned(ymd.month()), unsigned(ymd.day()));
            out.emplace_back(buf);
        }
        day += days{1};
    }
    return out;
}

} // namespace detail

/// Simulates the model: every series is a log-rate path against REF built
/// from per-step returns, exponentiated into rates. Deterministic per
/// seed; the global factor, each bloc factor and each currency use their
/// own substream, so the output does not depend on generation order.
inline RatePanel generate_market(const MarketModel& model, RandomSeed seed) {
    model.validate();

    const std::size_t steps = model.T;
    Rng factor_rng = Rng::substream(seed, 0);
    std::vector<double> global_factor(steps);
    for (double& x : global_factor) x = factor_rng.gaussian();

    std::vector<std::vector<double>> bloc_factor(model.blocs.size(),
                                                 std::vector<double>(steps));
    const double h = model.hub_strength;
    const double residual = std::sqrt(std::max(0.0, 1.0 - h * h));
    for (std::size_t b = 0; b < model.blocs.size(); ++b) {
        Rng rng = Rng::substream(seed, 1 + b);
        for (std::size_t t = 0; t < steps; ++t) {
            bloc_factor[b][t] = h * global_factor[t] + residual * rng.gaussian();
        }
    }

    std::vector<CurrencyCode> currencies;
    currencies.reserve(model.n_currencies - 1);
    std::vector<std::vector<double>> returns;
    returns.reserve(model.n_currencies - 1);
    const double vol = model.volatility;

    std::size_t stream = 100; // currency substreams start past the factors
    auto next_rng = [&] { return Rng::substream(seed, stream++); };

    currencies.emplace_back("HUB");
    {
        std::vector<double> r(steps);
        for (std::size_t t = 0; t < steps; ++t) r[t] = vol * global_factor[t];
        returns.push_back(std::move(r));
        ++stream; // keep one stream slot per currency, used or not
    }
    for (std::size_t b = 0; b < model.blocs.size(); ++b) {
        const double rho = model.blocs[b].intra_correlation;
        const double load = std::sqrt(rho);
        const double idio = std::sqrt(1.0 - rho);
        for (std::size_t i = 0; i < model.blocs[b].size; ++i) {
            std::string code = "B";
            code += static_cast<char>('A' + b);
            code += static_cast<char>('A' + i);
            currencies.emplace_back(code);
            Rng rng = next_rng();
            std::vector<double> r(steps);
            for (std::size_t t = 0; t < steps; ++t) {
                r[t] = vol * (load * bloc_factor[b][t] + idio * rng.gaussian());
            }
            returns.push_back(std::move(r));
        }
    }
    for (std::size_t i = 0; i < model.typicals(); ++i) {
        currencies.emplace_back("T" + detail::two_letter(i));
        Rng rng = next_rng();
        std::vector<double> r(steps);
        for (std::size_t t = 0; t < steps; ++t) {
            r[t] = vol * (h * global_factor[t] + residual * rng.gaussian());
        }
        returns.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < model.drifters; ++i) {
        currencies.emplace_back("D" + detail::two_letter(i));
        Rng rng = next_rng();
        const double trend = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * model.drifter_drift;
        const double dvol = vol * model.drifter_vol_multiplier;
        std::vector<double> r(steps);
        for (std::size_t t = 0; t < steps; ++t) r[t] = trend + dvol * rng.gaussian();
        returns.push_back(std::move(r));
    }

    const std::size_t n_cols = currencies.size();
    std::vector<double> rates((steps + 1) * n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) {
        double log_level = 0.0;
        rates[j] = 1.0;
        for (std::size_t t = 0; t < steps; ++t) {
            log_level += returns[j][t];
            rates[(t + 1) * n_cols + j] = std::exp(log_level);
        }
    }
    return RatePanel(CurrencyCode{"REF"}, std::move(currencies),
                     detail::weekday_timestamps(steps + 1), std::move(rates));
}

inline MarketModel MarketModel::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    MarketModel model;
    model.blocs.clear();
    std::string line;
    std::size_t line_no = 0;
    auto parse_double = [](std::string_view field, std::size_t at) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ParseError("'" + std::string(field) + "' is not a number", at);
        }
        return value;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        while (!view.empty() && view.front() == ' ') view.remove_prefix(1);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        auto strip = [](std::string_view s) {
            while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
            while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
            return s;
        };
        const std::string_view key = strip(view.substr(0, eq));
        const std::string_view value = strip(view.substr(eq + 1));
        if (key == "n_currencies") {
            model.n_currencies = static_cast<std::size_t>(parse_double(value, line_no));
        } else if (key == "T") {
            model.T = static_cast<std::size_t>(parse_double(value, line_no));
        } else if (key == "hub_strength") {
            model.hub_strength = parse_double(value, line_no);
        } else if (key == "drifters") {
            model.drifters = static_cast<std::size_t>(parse_double(value, line_no));
        } else if (key == "volatility") {
            model.volatility = parse_double(value, line_no);
        } else if (key == "drifter_vol_multiplier") {
            model.drifter_vol_multiplier = parse_double(value, line_no);
        } else if (key == "drifter_drift") {
            model.drifter_drift = parse_double(value, line_no);
        } else if (key == "bloc") {
            std::istringstream fields{std::string(value)};
            double size = 0.0, rho = -1.0;
            if (!(fields >> size >> rho)) {
                throw ParseError("bloc needs 'size intra_correlation'", line_no);
            }
            std::string extra;
            if (fields >> extra) throw ParseError("bloc takes exactly 2 values", line_no);
            model.blocs.push_back({static_cast<std::size_t>(size), rho});
        } else {
            throw ParseError("unknown model key '" + std::string(key) + "'", line_no);
        }
    }
    model.validate();
    return model;
}

} // namespace fxmst
