#pragma once

#include <map>
#include <string>

#include "fxmst/currency.hpp"
#include "fxmst/format.hpp"
#include "fxmst/mst.hpp"

namespace fxmst {

/// Fill colors per currency group for DOT output.
struct GroupColorMap {
    std::map<CurrencyGroup, std::string> colors;
    std::string fallback = "#cccccc";

    static GroupColorMap defaults() {
        GroupColorMap m;
        m.colors[CurrencyGroup::AStar] = "#e41a1c";
        m.colors[CurrencyGroup::A] = "#377eb8";
        m.colors[CurrencyGroup::B] = "#4daf4a";
        m.colors[CurrencyGroup::C] = "#984ea3";
        m.colors[CurrencyGroup::Metal] = "#ff9900";
        m.colors[CurrencyGroup::Fictitious] = "#999999";
        return m;
    }

    const std::string& color_of(std::optional<CurrencyGroup> group) const {
        if (!group) return fallback;
        auto it = colors.find(*group);
        return it == colors.end() ? fallback : it->second;
    }
};

/// Graphviz DOT rendering of the tree. Nodes carry their group color,
/// degenerate (constant-series) nodes are drawn dashed, edges are labeled
/// with the distance to 4 decimals. Output is byte-identical for identical
/// input: nodes in tree order, edges in acceptance order.
inline std::string export_dot(const MstTree& tree,
                              const GroupTable& groups,
                              const GroupColorMap& colors = GroupColorMap::defaults()) {
    std::string out;
    std::string name = tree.base().str();
    for (char& c : name) c = static_cast<char>(c - 'A' + 'a');
    out += "graph mst_" + name + " {\n";
    out += "  graph [label=\"MST, base " + tree.base().str() + "\", overlap=false];\n";
    out += "  node [shape=ellipse, style=filled, fontname=\"Helvetica\"];\n";
    for (const auto& node : tree.nodes()) {
        out += "  \"" + node.str() + "\" [fillcolor=\"" + colors.color_of(groups.group_of(node)) +
               "\"";
        if (tree.is_degenerate(node)) out += ", style=\"filled,dashed\"";
        out += "];\n";
    }
    for (const auto& edge : tree.edges()) {
        out += "  \"" + edge.a.str() + "\" -- \"" + edge.b.str() + "\" [label=\"" +
               format_fixed(edge.distance, 4) + "\"];\n";
    }
    out += "}\n";
    return out;
}

/// Flat `a,b,distance` edge list, one row per leg, acceptance order.
inline std::string export_edge_list(const MstTree& tree) {
    std::string out = "a,b,distance\n";
    for (const auto& edge : tree.edges()) {
        out += edge.a.str() + "," + edge.b.str() + "," + format_general(edge.distance, 12) + "\n";
    }
    return out;
}

/// Flat `code,K` multiplicity table in node order.
inline std::string export_multiplicities(const MstTree& tree) {
    std::string out = "code,K\n";
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
        out += tree.nodes()[i].str() + "," + std::to_string(tree.multiplicity(i)) + "\n";
    }
    return out;
}

} // namespace fxmst
