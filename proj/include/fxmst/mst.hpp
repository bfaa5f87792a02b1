#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/currency.hpp"
#include "fxmst/distance.hpp"
#include "fxmst/errors.hpp"

namespace fxmst {

namespace detail {

/// Union-find with path compression and union by rank.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

} // namespace detail

/// One tree leg. Endpoints are stored with `a` the lexicographically
/// smaller code.
struct MstEdge {
    CurrencyCode a;
    CurrencyCode b;
    double distance;
};

/// Minimal spanning tree over the currency distance graph: N nodes, N - 1
/// legs, per-node multiplicities K (the node degrees). Edges are kept in
/// the order Kruskal accepted them.
class MstTree {
public:
    MstTree(CurrencyCode base,
            std::vector<CurrencyCode> nodes,
            std::vector<MstEdge> edges,
            std::vector<int> multiplicities,
            std::set<std::string> degenerate)
        : base_(std::move(base)),
          nodes_(std::move(nodes)),
          edges_(std::move(edges)),
          multiplicities_(std::move(multiplicities)),
          degenerate_(std::move(degenerate)) {
        if (edges_.size() + 1 != nodes_.size() || multiplicities_.size() != nodes_.size()) {
            throw ValidationError("tree must have N - 1 edges and N multiplicities");
        }
    }

    const CurrencyCode& base() const noexcept { return base_; }
    const std::vector<CurrencyCode>& nodes() const noexcept { return nodes_; }
    const std::vector<MstEdge>& edges() const noexcept { return edges_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }

    /// Multiplicity K of node `i` in nodes() order.
    int multiplicity(std::size_t i) const { return multiplicities_[i]; }
    const std::vector<int>& multiplicities() const noexcept { return multiplicities_; }

    int multiplicity_of(const CurrencyCode& code) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i] == code) return multiplicities_[i];
        }
        throw UnknownCurrencyError("currency " + code.str() + " not a tree node");
    }

    double total_weight() const {
        double sum = 0.0;
        for (const auto& e : edges_) sum += e.distance;
        return sum;
    }

    bool is_degenerate(const CurrencyCode& code) const { return degenerate_.count(code.str()) > 0; }
    const std::set<std::string>& degenerate_nodes() const noexcept { return degenerate_; }

private:
    CurrencyCode base_;
    std::vector<CurrencyCode> nodes_;
    std::vector<MstEdge> edges_;
    std::vector<int> multiplicities_;
    std::set<std::string> degenerate_;
};

/// Kruskal's construction: sort all pairs ascending by distance, breaking
/// ties by the lexicographic (min code, max code) endpoint pair, and accept
/// an edge whenever it joins two distinct components. The complete graph
/// always yields a spanning tree, so no failure mode exists for valid
/// input.
inline MstTree build_mst(const DistanceMatrix& distance) {
    const std::size_t n = distance.size();
    if (n < 2) throw InsufficientDataError("spanning tree needs at least 2 nodes");

    struct Candidate {
        double d;
        std::size_t i; // endpoint with the smaller code
        std::size_t j;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    const auto& codes = distance.currencies();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool ordered = codes[i].str() < codes[j].str();
            candidates.push_back({distance.at(i, j), ordered ? i : j, ordered ? j : i});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
        if (x.d != y.d) return x.d < y.d;
        if (codes[x.i].str() != codes[y.i].str()) return codes[x.i].str() < codes[y.i].str();
        return codes[x.j].str() < codes[y.j].str();
    });

    detail::UnionFind components(n);
    std::vector<MstEdge> edges;
    std::vector<int> multiplicities(n, 0);
    edges.reserve(n - 1);
    for (const auto& c : candidates) {
        if (!components.unite(c.i, c.j)) continue;
        edges.push_back({codes[c.i], codes[c.j], c.d});
        ++multiplicities[c.i];
        ++multiplicities[c.j];
        if (edges.size() == n - 1) break;
    }

    std::set<std::string> degenerate;
    for (std::size_t i = 0; i < n; ++i) {
        if (distance.is_degenerate(i)) degenerate.insert(codes[i].str());
    }
    return MstTree(distance.base(), codes, std::move(edges), std::move(multiplicities),
                   std::move(degenerate));
}

} // namespace fxmst
