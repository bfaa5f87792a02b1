#pragma once

#include <cstddef>
#include <map>

#include "fxmst/errors.hpp"
#include "fxmst/mst.hpp"

namespace fxmst {

/// Node-multiplicity statistics of one tree.
///
/// counts[K] is the number of nodes with exactly K legs. cumulative[K] is
/// the number of nodes with K or more legs, defined for every K in
/// [1, k_max] (a suffix sum over counts, so it is positive and
/// non-increasing there). normalized[K] = cumulative[K] / n_total, which
/// makes trees of different sizes comparable; normalized[1] is always 1.
struct DegreeDistribution {
    std::size_t n_total = 0;
    int k_max = 0;
    std::map<int, int> counts;
    std::map<int, int> cumulative;
    std::map<int, double> normalized;
};

inline DegreeDistribution degree_distribution(const MstTree& tree) {
    DegreeDistribution dist;
    dist.n_total = tree.node_count();
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
        const int k = tree.multiplicity(i);
        ++dist.counts[k];
        dist.k_max = std::max(dist.k_max, k);
    }
    int running = 0;
    for (int k = dist.k_max; k >= 1; --k) {
        auto it = dist.counts.find(k);
        if (it != dist.counts.end()) running += it->second;
        dist.cumulative[k] = running;
        dist.normalized[k] = static_cast<double>(running) / static_cast<double>(dist.n_total);
    }
    return dist;
}

} // namespace fxmst
