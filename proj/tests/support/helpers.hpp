// Shared builders for tests: small panels, random panels, synthetic trees.

#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/currency.hpp"
#include "fxmst/mst.hpp"
#include "fxmst/nullmodel.hpp"
#include "fxmst/panel.hpp"
#include "fxmst/rng.hpp"

namespace testing_support {

inline std::vector<fxmst::CurrencyCode> make_codes(const std::vector<std::string>& names) {
    std::vector<fxmst::CurrencyCode> codes;
    codes.reserve(names.size());
    for (const auto& name : names) codes.emplace_back(name);
    return codes;
}

/// Panel from an explicit (T+1) x N rate grid, row per timestamp.
inline fxmst::RatePanel make_panel(const std::string& base,
                                   const std::vector<std::string>& currencies,
                                   const std::vector<std::vector<double>>& rows) {
    std::vector<double> rates;
    for (const auto& row : rows) {
        for (double r : row) rates.push_back(r);
    }
    return fxmst::RatePanel(fxmst::CurrencyCode{base}, make_codes(currencies),
                            fxmst::detail::weekday_timestamps(rows.size()), std::move(rates));
}

/// Random positive panel: independent lognormal random walks.
inline fxmst::RatePanel random_panel(std::size_t n_currencies,
                                     std::size_t n_days,
                                     std::uint64_t seed,
                                     double step = 0.01) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_currencies; ++i) {
        std::string code = "AAA";
        code[1] = static_cast<char>('A' + i / 26);
        code[2] = static_cast<char>('A' + i % 26);
        names.push_back(code);
    }
    std::vector<std::vector<double>> rows(n_days, std::vector<double>(n_currencies));
    for (std::size_t j = 0; j < n_currencies; ++j) {
        fxmst::Rng rng = fxmst::Rng::substream(fxmst::RandomSeed{seed}, j);
        double level = 0.0;
        for (std::size_t t = 0; t < n_days; ++t) {
            rows[t][j] = std::exp(level);
            level += step * rng.gaussian();
        }
    }
    return make_panel("ZZZ", names, rows);
}

/// Tree over synthetic codes from an explicit edge list (no distances
/// involved; all edge lengths 0.5).
inline fxmst::MstTree tree_from_edges(std::size_t n,
                                      const std::vector<std::pair<int, int>>& edges) {
    std::vector<fxmst::CurrencyCode> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        std::string code = "NAA";
        code[1] = static_cast<char>('A' + i / 26);
        code[2] = static_cast<char>('A' + i % 26);
        nodes.emplace_back(code);
    }
    std::vector<int> degree(n, 0);
    std::vector<fxmst::MstEdge> tree_edges;
    for (const auto& [a, b] : edges) {
        const auto& ca = nodes[static_cast<std::size_t>(a)];
        const auto& cb = nodes[static_cast<std::size_t>(b)];
        tree_edges.push_back(ca.str() < cb.str() ? fxmst::MstEdge{ca, cb, 0.5}
                                                 : fxmst::MstEdge{cb, ca, 0.5});
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
    }
    return fxmst::MstTree(fxmst::CurrencyCode{"ZZZ"}, std::move(nodes), std::move(tree_edges),
                          std::move(degree), {});
}

} // namespace testing_support
