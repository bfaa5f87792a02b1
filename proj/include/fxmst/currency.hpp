#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fxmst/errors.hpp"

namespace fxmst {

/// Liquidity class of a currency. AStar holds the majors, A the remaining
/// liquid currencies (precious metals included), B the less liquid ones and
/// C the non-tradable ones. Metal and Fictitious exist for explicit
/// overrides and synthetic series.
enum class CurrencyGroup { AStar, A, B, C, Metal, Fictitious };

inline std::string_view to_string(CurrencyGroup g) {
    switch (g) {
    case CurrencyGroup::AStar: return "A_STAR";
    case CurrencyGroup::A: return "A";
    case CurrencyGroup::B: return "B";
    case CurrencyGroup::C: return "C";
    case CurrencyGroup::Metal: return "METAL";
    case CurrencyGroup::Fictitious: return "FICTITIOUS";
    }
    return "?";
}

inline std::optional<CurrencyGroup> group_from_string(std::string_view s) {
    if (s == "A_STAR") return CurrencyGroup::AStar;
    if (s == "A") return CurrencyGroup::A;
    if (s == "B") return CurrencyGroup::B;
    if (s == "C") return CurrencyGroup::C;
    if (s == "METAL") return CurrencyGroup::Metal;
    if (s == "FICTITIOUS") return CurrencyGroup::Fictitious;
    return std::nullopt;
}

/// Three-letter currency identifier, ISO 4217 style (XAU/XAG/XPT metals and
/// synthetic codes use the same shape). Always exactly three uppercase
/// ASCII letters.
class CurrencyCode {
public:
    explicit CurrencyCode(std::string_view code) : code_(code) {
        if (code.size() != 3) {
            throw ValidationError("currency code must have exactly 3 letters: '" +
                                  std::string(code) + "'");
        }
        for (char c : code) {
            if (c < 'A' || c > 'Z') {
                throw ValidationError("currency code must be uppercase ASCII letters: '" +
                                      std::string(code) + "'");
            }
        }
    }

    const std::string& str() const noexcept { return code_; }

    auto operator<=>(const CurrencyCode&) const = default;

private:
    std::string code_;
};

/// Code reserved for the synthetic noise currency appended by the null
/// model.
inline const CurrencyCode& fictitious_code() {
    static const CurrencyCode code{"FIC"};
    return code;
}

inline bool is_metal(const CurrencyCode& code) {
    return code.str() == "XAU" || code.str() == "XAG" || code.str() == "XPT";
}

/// Mapping code -> group. Ships with a 60-currency default covering the
/// four liquidity classes; editable via a `code,group` text file.
class GroupTable {
public:
    GroupTable() = default;

    void assign(const CurrencyCode& code, CurrencyGroup group) {
        entries_[code.str()] = group;
    }

    /// Group of `code`, or nullopt for codes outside the table. "FIC" is
    /// always Fictitious.
    std::optional<CurrencyGroup> group_of(const CurrencyCode& code) const {
        if (code == fictitious_code()) return CurrencyGroup::Fictitious;
        auto it = entries_.find(code.str());
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<std::string, CurrencyGroup>& entries() const noexcept { return entries_; }

    std::size_t size() const noexcept { return entries_.size(); }

    /// Default assignment: 11 majors (A*), 21 liquid (A, metals included),
    /// 9 less liquid (B), 19 non-tradable (C).
    static GroupTable defaults() {
        static const std::array<const char*, 11> a_star = {
            "USD", "EUR", "JPY", "GBP", "CHF", "CAD", "AUD", "NZD", "SEK", "NOK", "DKK"};
        static const std::array<const char*, 21> a = {
            "CYP", "CZK", "HKD", "HUF", "IDR", "ILS", "ISK", "KRW", "MXN", "MYR", "PHP",
            "PLN", "SGD", "SKK", "THB", "TRY", "TWD", "XAG", "XAU", "XPT", "ZAR"};
        static const std::array<const char*, 9> b = {
            "ARS", "BGN", "BRL", "CLP", "KWD", "RON", "RUB", "SAR", "TTD"};
        static const std::array<const char*, 19> c = {
            "AED", "COP", "DZD", "EGP", "FJD", "GHC", "HNL", "INR", "JMD", "JOD",
            "LBP", "LKR", "MAD", "PEN", "PKR", "SDD", "TND", "VEB", "ZMK"};

        GroupTable table;
        for (const char* code : a_star) table.assign(CurrencyCode{code}, CurrencyGroup::AStar);
        for (const char* code : a) table.assign(CurrencyCode{code}, CurrencyGroup::A);
        for (const char* code : b) table.assign(CurrencyCode{code}, CurrencyGroup::B);
        for (const char* code : c) table.assign(CurrencyCode{code}, CurrencyGroup::C);
        return table;
    }

private:
    std::map<std::string, CurrencyGroup> entries_;
};

} // namespace fxmst
