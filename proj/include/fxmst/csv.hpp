#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fxmst/cleaning.hpp"
#include "fxmst/currency.hpp"
#include "fxmst/errors.hpp"
#include "fxmst/format.hpp"
#include "fxmst/panel.hpp"

namespace fxmst {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    const int y = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
    const unsigned m = static_cast<unsigned>((s[5] - '0') * 10 + (s[6] - '0'));
    const unsigned d = static_cast<unsigned>((s[8] - '0') * 10 + (s[9] - '0'));
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                       std::chrono::day{d}}
        .ok();
}

inline double parse_rate(std::string_view field, std::size_t line) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("rate '" + std::string(field) + "' is not a number", line);
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParseError("rate must be finite and > 0, got '" + std::string(field) + "'", line);
    }
    return value;
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace detail

namespace detail {

inline RatePanel parse_panel(std::istream& in, std::map<std::string, std::size_t>* raw_counts);

} // namespace detail

/// Parses the long-form rate file: optional `# key: value` comment lines
/// (one must be `# reference: XXX` naming the quote currency), a
/// `date,currency,rate` header, then one row per (date, currency). Comma
/// and tab delimiters are both accepted; the header row decides. Series
/// are synchronized to the timestamps present in every series.
///
/// No jump filtering happens here; see load_panel.
inline RatePanel read_panel_csv(std::istream& in) { return detail::parse_panel(in, nullptr); }

namespace detail {

inline RatePanel parse_panel(std::istream& in, std::map<std::string, std::size_t>* raw_counts) {
    std::string line;
    std::size_t line_no = 0;

    std::map<std::string, std::string> metadata;
    bool header_seen = false;
    char delim = ',';

    // currency -> (date -> rate), currencies kept in first-appearance order
    std::vector<CurrencyCode> order;
    std::map<std::string, std::map<std::string, double>> series;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (view.empty()) continue;
        if (view.front() == '#') {
            view.remove_prefix(1);
            const std::size_t colon = view.find(':');
            if (colon != std::string_view::npos) {
                std::string key{detail::trim(view.substr(0, colon))};
                std::string value{detail::trim(view.substr(colon + 1))};
                metadata[key] = value;
            }
            continue;
        }
        if (!header_seen) {
            delim = view.find('\t') != std::string_view::npos ? '\t' : ',';
            auto fields = detail::split(view, delim);
            if (fields.size() != 3 || detail::trim(fields[0]) != "date" ||
                detail::trim(fields[1]) != "currency" || detail::trim(fields[2]) != "rate") {
                throw ParseError("expected header 'date,currency,rate'", line_no);
            }
            header_seen = true;
            continue;
        }

        auto fields = detail::split(view, delim);
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
        }
        const std::string_view date_field = detail::trim(fields[0]);
        const std::string_view code_field = detail::trim(fields[1]);
        const std::string_view rate_field = detail::trim(fields[2]);

        if (!detail::is_iso_date(date_field)) {
            throw ParseError("date '" + std::string(date_field) + "' is not YYYY-MM-DD", line_no);
        }
        CurrencyCode code = [&] {
            try {
                return CurrencyCode{code_field};
            } catch (const ValidationError& e) {
                throw ParseError(e.what(), line_no);
            }
        }();
        const double rate = detail::parse_rate(rate_field, line_no);

        auto [it, inserted] = series.try_emplace(code.str());
        if (inserted) order.push_back(code);
        if (!it->second.emplace(std::string(date_field), rate).second) {
            throw ParseError("duplicate row for " + code.str() + " on " + std::string(date_field),
                             line_no);
        }
    }

    if (!header_seen) throw ParseError("file has no 'date,currency,rate' header");
    auto ref_it = metadata.find("reference");
    if (ref_it == metadata.end()) {
        throw ParseError("missing '# reference: XXX' line naming the quote currency");
    }
    CurrencyCode reference = [&] {
        try {
            return CurrencyCode{ref_it->second};
        } catch (const ValidationError& e) {
            throw ParseError(std::string("bad reference currency: ") + e.what());
        }
    }();
    if (series.count(reference.str()) > 0) {
        throw ParseError("reference currency " + reference.str() +
                         " must not appear as a data series");
    }
    if (order.empty()) throw ParseError("file contains no data rows");

    if (raw_counts) {
        for (const auto& [code, points] : series) (*raw_counts)[code] = points.size();
    }

    // Gap synchronization: keep only dates present in every series.
    std::map<std::string, std::size_t> date_hits;
    for (const auto& [code, points] : series) {
        for (const auto& [date, rate] : points) ++date_hits[date];
    }
    std::vector<std::string> timestamps;
    for (const auto& [date, hits] : date_hits) {
        if (hits == series.size()) timestamps.push_back(date);
    }
    if (timestamps.empty()) {
        throw InsufficientDataError("series share no common timestamps");
    }

    std::vector<double> rates(timestamps.size() * order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        const auto& points = series.at(order[j].str());
        for (std::size_t t = 0; t < timestamps.size(); ++t) {
            rates[t * order.size() + j] = points.at(timestamps[t]);
        }
    }
    return RatePanel(std::move(reference), std::move(order), std::move(timestamps),
                     std::move(rates));
}

} // namespace detail

inline RatePanel read_panel_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return read_panel_csv(in);
}

/// Full ingestion: parse + synchronize gaps + jump filtering + length check.
/// A rejection names the series that fall short of the minimum length.
inline RatePanel load_panel(std::istream& in, const CleaningConfig& config = {}) {
    config.validate();
    std::map<std::string, std::size_t> raw_counts;
    RatePanel panel = clean_panel(detail::parse_panel(in, &raw_counts), config);
    if (panel.sample_count() < config.min_length) {
        // Name the sparse sources if any, otherwise every series (the grid
        // itself is too short after synchronization and filtering).
        std::string offenders;
        for (const auto& [code, count] : raw_counts) {
            if (count < config.min_length) {
                offenders += offenders.empty() ? code : ", " + code;
            }
        }
        if (offenders.empty()) {
            for (const auto& code : panel.currencies()) {
                offenders += offenders.empty() ? code.str() : ", " + code.str();
            }
        }
        throw InsufficientDataError("panel has " + std::to_string(panel.sample_count()) +
                                    " timestamps after cleaning, below the minimum of " +
                                    std::to_string(config.min_length) + " (series: " + offenders +
                                    ")");
    }
    return panel;
}

inline RatePanel load_panel(const std::filesystem::path& path, const CleaningConfig& config = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return load_panel(in, config);
}

/// Writes the panel in the same long-form layout read_panel_csv accepts.
/// Rates use 17 significant digits, so a write/read round trip is lossless.
inline void write_panel_csv(std::ostream& out, const RatePanel& panel) {
    out << "# reference: " << panel.base().str() << "\n";
    out << "date,currency,rate\n";
    for (std::size_t t = 0; t < panel.sample_count(); ++t) {
        for (std::size_t j = 0; j < panel.currency_count(); ++j) {
            out << panel.timestamps()[t] << ',' << panel.currencies()[j].str() << ','
                << format_general(panel.rate(t, j), 17) << "\n";
        }
    }
}

inline void write_panel_csv(const std::filesystem::path& path, const RatePanel& panel) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_panel_csv(out, panel);
}

/// Reads a `code,group` table; `#` comments and a header row are allowed.
inline GroupTable read_group_table(std::istream& in) {
    GroupTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = detail::trim(line);
        if (view.empty() || view.front() == '#') continue;
        const char delim = view.find('\t') != std::string_view::npos ? '\t' : ',';
        auto fields = detail::split(view, delim);
        if (fields.size() != 2) {
            throw ParseError("expected 'code,group'", line_no);
        }
        const std::string_view code_field = detail::trim(fields[0]);
        const std::string_view group_field = detail::trim(fields[1]);
        if (code_field == "code" && group_field == "group") continue; // header
        auto group = group_from_string(group_field);
        if (!group) {
            throw ParseError("unknown group '" + std::string(group_field) + "'", line_no);
        }
        try {
            table.assign(CurrencyCode{code_field}, *group);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return table;
}

inline GroupTable read_group_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return read_group_table(in);
}

inline void write_group_table(std::ostream& out, const GroupTable& table) {
    out << "code,group\n";
    for (const auto& [code, group] : table.entries()) {
        out << code << ',' << to_string(group) << "\n";
    }
}

} // namespace fxmst
