// Independent oracles used to cross-check the library implementations.
// Nothing here shares code with the implementation paths under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fxmst/rng.hpp"

namespace oracle {

// ---------------------------------------------------------------------
// Symmetric eigenvalues for n <= 4 via the characteristic polynomial.
// Coefficients come from sums of principal minors, roots from recursive
// derivative interleaving + bisection. Assumes simple roots (generic
// random matrices); not for spectra with exact multiplicities.
// ---------------------------------------------------------------------

inline double det3(const double* m, std::size_t stride, std::size_t r0, std::size_t r1,
                   std::size_t r2) {
    auto a = [&](std::size_t i, std::size_t j) { return m[i * stride + j]; };
    return a(r0, r0) * (a(r1, r1) * a(r2, r2) - a(r1, r2) * a(r2, r1)) -
           a(r0, r1) * (a(r1, r0) * a(r2, r2) - a(r1, r2) * a(r2, r0)) +
           a(r0, r2) * (a(r1, r0) * a(r2, r1) - a(r1, r1) * a(r2, r0));
}

// det of the full 4x4 by cofactor expansion along the first row.
inline double det4(const std::vector<double>& m) {
    auto minor3 = [&](std::size_t skip_col) {
        double sub[9];
        std::size_t c = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == skip_col) continue;
            for (std::size_t i = 1; i < 4; ++i) sub[(i - 1) * 3 + c] = m[i * 4 + j];
            ++c;
        }
        return sub[0] * (sub[4] * sub[8] - sub[5] * sub[7]) -
               sub[1] * (sub[3] * sub[8] - sub[5] * sub[6]) +
               sub[2] * (sub[3] * sub[7] - sub[4] * sub[6]);
    };
    double det = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        det += sign * m[j] * minor3(j);
    }
    return det;
}

// Monic characteristic polynomial det(xI - A), coefficients ascending:
// c[0] + c[1] x + ... + c[n] x^n with c[n] = 1.
inline std::vector<double> char_poly(const std::vector<double>& a, std::size_t n) {
    if (n == 0 || n > 4 || a.size() != n * n) {
        throw std::invalid_argument("char_poly handles 1 <= n <= 4");
    }
    auto at = [&](std::size_t i, std::size_t j) { return a[i * n + j]; };

    double e1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) e1 += at(i, i);
    double e2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            e2 += at(i, i) * at(j, j) - at(i, j) * at(j, i);
        }
    }
    double e3 = 0.0;
    if (n >= 3) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                for (std::size_t k = j + 1; k < n; ++k) {
                    e3 += det3(a.data(), n, i, j, k);
                }
            }
        }
    }
    const double e4 = (n == 4) ? det4(a) : 0.0;

    // det(xI - A) = x^n - e1 x^{n-1} + e2 x^{n-2} - e3 x^{n-3} + e4
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    c[n - 1] = -e1;
    if (n >= 2) c[n - 2] = e2;
    if (n >= 3) c[n - 3] = -e3;
    if (n >= 4) c[n - 4] = e4;
    return c;
}

inline double poly_eval(const std::vector<double>& c, double x) {
    double y = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) y = y * x + c[i];
    return y;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

inline double bisect_root(const std::vector<double>& c, double lo, double hi) {
    double flo = poly_eval(c, lo);
    if (flo == 0.0) return lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = poly_eval(c, mid);
        if (fmid == 0.0 || hi - lo < 1e-15 * std::max(1.0, std::fabs(mid))) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All real roots of a real-rooted polynomial inside [lo, hi], ascending.
inline std::vector<double> real_roots(const std::vector<double>& c, double lo, double hi) {
    const std::size_t degree = c.size() - 1;
    if (degree == 1) return {-c[0] / c[1]};
    if (degree == 2) {
        const double a = c[2], b = c[1], k = c[0];
        const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * k));
        const double q = -0.5 * (b + (b >= 0.0 ? disc : -disc));
        std::vector<double> roots = {q / a, (q != 0.0) ? k / q : -b / (2.0 * a)};
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    std::vector<double> cuts = real_roots(poly_derivative(c), lo, hi);
    std::vector<double> edges = {lo};
    for (double cut : cuts) {
        if (cut > edges.back() && cut < hi) edges.push_back(cut);
    }
    edges.push_back(hi);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double fa = poly_eval(c, edges[i]);
        const double fb = poly_eval(c, edges[i + 1]);
        if (fa == 0.0) {
            roots.push_back(edges[i]);
        } else if ((fa < 0.0) != (fb <= 0.0)) {
            roots.push_back(bisect_root(c, edges[i], edges[i + 1]));
        }
    }
    return roots;
}

/// Eigenvalues of a symmetric n x n matrix (n <= 4), ascending.
inline std::vector<double> eigenvalues_charpoly(const std::vector<double>& a, std::size_t n) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) radius += std::fabs(a[i * n + j]);
        }
        lo = std::min(lo, a[i * n + i] - radius);
        hi = std::max(hi, a[i * n + i] + radius);
    }
    const double pad = 1e-6 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
    auto roots = real_roots(char_poly(a, n), lo - pad, hi + pad);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------
// Exhaustive minimum-spanning-tree weight via Prufer sequences: every
// labeled tree on n nodes corresponds to one sequence in [0,n)^(n-2).
// Weights are summed over ascending edge weights so equal edge multisets
// produce identical doubles.
// ---------------------------------------------------------------------

inline double tree_weight_canonical(std::vector<double> weights) {
    std::sort(weights.begin(), weights.end());
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

inline double prufer_tree_weight(const std::vector<int>& sequence,
                                 const std::vector<double>& dist,
                                 std::size_t n) {
    std::vector<int> degree(n, 1);
    for (int s : sequence) ++degree[static_cast<std::size_t>(s)];
    std::vector<double> weights;
    weights.reserve(n - 1);
    std::vector<bool> used(n, false);
    for (int s : sequence) {
        std::size_t leaf = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (degree[j] == 1 && !used[j]) {
                leaf = j;
                break;
            }
        }
        weights.push_back(dist[leaf * n + static_cast<std::size_t>(s)]);
        used[leaf] = true;
        --degree[static_cast<std::size_t>(s)];
    }
    std::size_t a = n, b = n;
    for (std::size_t j = 0; j < n; ++j) {
        if (!used[j] && degree[j] == 1) {
            if (a == n) {
                a = j;
            } else {
                b = j;
            }
        }
    }
    weights.push_back(dist[a * n + b]);
    return tree_weight_canonical(std::move(weights));
}

/// Minimum total weight over every labeled spanning tree of the complete
/// graph with symmetric distance grid `dist` (row-major n x n), n <= 8.
inline double min_spanning_weight_exhaustive(const std::vector<double>& dist, std::size_t n) {
    if (n < 2 || n > 8) throw std::invalid_argument("exhaustive MST oracle handles 2 <= n <= 8");
    if (n == 2) return dist[1];
    const std::size_t length = n - 2;
    std::vector<int> sequence(length, 0);
    double best = 1e300;
    while (true) {
        best = std::min(best, prufer_tree_weight(sequence, dist, n));
        std::size_t pos = 0;
        while (pos < length) {
            if (++sequence[pos] < static_cast<int>(n)) break;
            sequence[pos] = 0;
            ++pos;
        }
        if (pos == length) break;
    }
    return best;
}

// ---------------------------------------------------------------------
// Random trees grown by degree-preferential attachment: node v attracts a
// new node with probability proportional to degree(v) + offset.
// ---------------------------------------------------------------------

inline std::vector<std::pair<int, int>> preferential_attachment_tree(std::size_t n,
                                                                     double offset,
                                                                     fxmst::Rng& rng) {
    if (n < 2) throw std::invalid_argument("tree needs at least 2 nodes");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    std::vector<double> degree(n, 0.0);
    edges.emplace_back(0, 1);
    degree[0] = degree[1] = 1.0;
    for (std::size_t v = 2; v < n; ++v) {
        double total = 0.0;
        for (std::size_t u = 0; u < v; ++u) total += degree[u] + offset;
        double pick = rng.uniform01() * total;
        std::size_t target = v - 1;
        for (std::size_t u = 0; u < v; ++u) {
            pick -= degree[u] + offset;
            if (pick <= 0.0) {
                target = u;
                break;
            }
        }
        edges.emplace_back(static_cast<int>(target), static_cast<int>(v));
        degree[target] += 1.0;
        degree[v] = 1.0;
    }
    return edges;
}

} // namespace oracle
