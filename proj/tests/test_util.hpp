// Shared helpers and independent oracles for the test suites. The
// oracles here deliberately avoid the library's computation paths:
// persistence via union-find or rank formulas, assignment via
// permutation enumeration, k-center via subset enumeration.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "critsamp/field.hpp"
#include "critsamp/homology.hpp"
#include "critsamp/morse.hpp"
#include "critsamp/point_cloud.hpp"

namespace testutil {

using critsamp::DiagramPoint;
using critsamp::PersistenceDiagram;
using critsamp::PointCloud;
using critsamp::ScalarField;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// --- random instances ----------------------------------------------------

inline PointCloud random_cloud(std::mt19937_64& rng, int n, int dim,
                               double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(n) * dim);
    for (int i = 0; i < n * dim; ++i) coords.push_back(uni(rng));
    return PointCloud(static_cast<std::size_t>(dim), std::move(coords));
}

inline ScalarField random_field(std::mt19937_64& rng, int w, int h) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(w) * h);
    for (int i = 0; i < w * h; ++i) values.push_back(uni(rng));
    return ScalarField(w, h, std::move(values));
}

// Smooth field: a few random Gaussian bumps on a flat background.
inline ScalarField random_smooth_field(std::mt19937_64& rng, int w, int h,
                                       int bumps) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::array<double, 4>> gs;  // cx, cy, sigma, height
    for (int b = 0; b < bumps; ++b)
        gs.push_back({uni(rng) * w, uni(rng) * h, 1.5 + 3.0 * uni(rng),
                      0.3 + 0.7 * uni(rng)});
    return critsamp::field_from_function(w, h, [&](int u, int v) {
        double s = 0.0;
        for (const auto& g : gs) {
            double dx = u - g[0], dy = v - g[1];
            s += g[3] * std::exp(-(dx * dx + dy * dy) / (2.0 * g[2] * g[2]));
        }
        return s;
    });
}

// --- diagram comparison ----------------------------------------------------

inline bool points_equal(const std::vector<DiagramPoint>& a,
                         const std::vector<DiagramPoint>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].birth != b[i].birth) return false;
        bool inf_a = std::isinf(a[i].death), inf_b = std::isinf(b[i].death);
        if (inf_a != inf_b) return false;
        if (!inf_a && a[i].death != b[i].death) return false;
    }
    return true;
}

inline bool diagrams_equal(const std::vector<PersistenceDiagram>& a,
                           const std::vector<PersistenceDiagram>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].dim != b[i].dim) return false;
        if (!points_equal(a[i].points, b[i].points)) return false;
    }
    return true;
}

// --- minimum spanning tree -------------------------------------------------

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Kruskal; returns the sorted multiset of MST edge weights.
inline std::vector<double> mst_edge_weights(const PointCloud& cloud) {
    const int n = static_cast<int>(cloud.size());
    std::vector<std::tuple<double, int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.emplace_back(cloud.distance(i, j), i, j);
    std::sort(edges.begin(), edges.end());
    UnionFind uf(n);
    std::vector<double> weights;
    for (auto& [d, i, j] : edges)
        if (uf.merge(i, j)) weights.push_back(d);
    std::sort(weights.begin(), weights.end());
    return weights;
}

// --- assignment / Wasserstein by enumeration -------------------------------

inline double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = kInf;
    do {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += cost[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return n == 0 ? 0.0 : best;
}

// Independent Wasserstein: same augmented-matching contract, optimum by
// enumerating all permutations.
inline double brute_force_wasserstein(const PersistenceDiagram& d1,
                                      const PersistenceDiagram& d2, double q) {
    double cap = std::min(d1.cap, d2.cap);
    auto finite = [&](const PersistenceDiagram& d) {
        std::vector<DiagramPoint> pts;
        for (DiagramPoint p : d.points) {
            if (std::isinf(p.death)) p.death = cap;
            if (p.death > p.birth) pts.push_back(p);
        }
        return pts;
    };
    auto a = finite(d1), b = finite(d2);
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    const int n = na + nb;
    if (n == 0) return 0.0;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double base = 0.0;
            if (i < na && j < nb)
                base = std::max(std::abs(a[i].birth - b[j].birth),
                                std::abs(a[i].death - b[j].death));
            else if (i < na)
                base = (a[i].death - a[i].birth) / 2.0;
            else if (j < nb)
                base = (b[j].death - b[j].birth) / 2.0;
            cost[i][j] = std::pow(base, q);
        }
    return std::pow(brute_force_assignment(cost), 1.0 / q);
}

// --- k-center ---------------------------------------------------------------

inline double coverage_of(const PointCloud& cloud, const std::vector<int>& c) {
    double radius = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double nearest = kInf;
        for (int j : c) nearest = std::min(nearest, cloud.distance(i, j));
        radius = std::max(radius, nearest);
    }
    return radius;
}

// Optimal k-center radius by enumerating all m-subsets.
inline double optimal_k_center_radius(const PointCloud& cloud, int m) {
    const int n = static_cast<int>(cloud.size());
    std::vector<int> pick(m);
    double best = kInf;
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == m) {
            best = std::min(best, coverage_of(cloud, pick));
            return;
        }
        for (int i = start; i <= n - (m - depth); ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

// --- union-find persistence of a grid field ---------------------------------

// 0-dimensional sublevel persistence of a grid scalar field with
// 4-connectivity, by the classic union-find sweep. Finite pairs sorted;
// essential classes reported as (birth, +inf). Ties broken by row-major
// index, matching the library's total vertex order.
inline std::vector<DiagramPoint> grid_sublevel_h0(const ScalarField& f) {
    const int w = f.width(), h = f.height(), n = w * h;
    const auto& vals = f.values();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (vals[a] != vals[b]) return vals[a] < vals[b];
        return a < b;
    });
    std::vector<int> rank(n);
    for (int pos = 0; pos < n; ++pos) rank[order[pos]] = pos;

    UnionFind uf(n);
    std::vector<int> birth_vertex(n);  // per current root
    std::vector<char> alive(n, 0);
    std::vector<DiagramPoint> out;
    for (int pos = 0; pos < n; ++pos) {
        int idx = order[pos];
        alive[idx] = 1;
        birth_vertex[idx] = idx;
        int u = idx % w, v = idx / w;
        const int du[4] = {-1, 1, 0, 0}, dv[4] = {0, 0, -1, 1};
        for (int t = 0; t < 4; ++t) {
            int uu = u + du[t], vv = v + dv[t];
            if (uu < 0 || vv < 0 || uu >= w || vv >= h) continue;
            int jdx = vv * w + uu;
            if (!alive[jdx]) continue;
            int ra = uf.find(idx), rb = uf.find(jdx);
            if (ra == rb) continue;
            // The component with the younger birth dies here.
            int ba = birth_vertex[ra], bb = birth_vertex[rb];
            int dying = rank[ba] > rank[bb] ? ba : bb;
            int living = dying == ba ? bb : ba;
            uf.parent[ra] = rb;
            birth_vertex[uf.find(rb)] = living;
            if (vals[idx] > vals[dying])
                out.push_back({vals[dying], vals[idx]});
        }
    }
    // Essential classes: one per remaining component.
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (!seen[r]) {
            seen[r] = 1;
            out.push_back({vals[birth_vertex[r]], kInf});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- discrete gradient checks ------------------------------------------------

// V-paths between d-cells: lambda -> alpha = V(lambda) -> other faces.
// Returns true when no directed cycle exists.
inline bool gradient_is_acyclic(const critsamp::DiscreteGradient& g) {
    const int dw = g.doubled_width(), dh = g.doubled_height();
    auto dim_of = [&](int c) { return (c % dw & 1) + (c / dw & 1); };
    auto faces_of = [&](int c, int out[4]) {
        int x = c % dw, y = c / dw, k = 0;
        if (x & 1) {
            out[k++] = y * dw + (x - 1);
            out[k++] = y * dw + (x + 1);
        }
        if (y & 1) {
            out[k++] = (y - 1) * dw + x;
            out[k++] = (y + 1) * dw + x;
        }
        // For squares this lists the four edges when called per parity
        // axis; vertices of edges fall out of the same arithmetic.
        return k;
    };

    const int n = dw * dh;
    // color: 0 unvisited, 1 in progress, 2 done
    std::vector<char> color(n, 0);
    auto dfs = [&](auto&& self, int cell) -> bool {
        color[cell] = 1;
        int partner = g.pair_of[cell];
        if (partner >= 0 && dim_of(partner) == dim_of(cell) + 1) {
            int fs[4];
            int k = faces_of(partner, fs);
            for (int t = 0; t < k; ++t) {
                int next = fs[t];
                if (next == cell || dim_of(next) != dim_of(cell)) continue;
                if (color[next] == 1) return false;
                if (color[next] == 0 && !self(self, next)) return false;
            }
        }
        color[cell] = 2;
        return true;
    };
    for (int c = 0; c < n; ++c)
        if (color[c] == 0 && dim_of(c) < 2)
            if (!dfs(dfs, c)) return false;
    return true;
}

}  // namespace testutil
