#include "critsamp/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "critsamp/errors.hpp"
#include "critsamp/io.hpp"

namespace critsamp {

Simplex Simplex::make(std::initializer_list<std::int32_t> verts,
                      double value) {
    if (verts.size() < 1 || verts.size() > 4)
        throw ValidationError("simplex must have 1 to 4 vertices");
    Simplex s;
    int i = 0;
    for (std::int32_t v : verts) s.vertices[i++] = v;
    std::sort(s.vertices.begin(), s.vertices.begin() + i);
    for (int t = 0; t + 1 < i; ++t)
        if (s.vertices[t] == s.vertices[t + 1])
            throw ValidationError("simplex vertices must be distinct");
    s.dim = static_cast<std::int8_t>(i - 1);
    s.value = value;
    return s;
}

namespace {

bool filtration_order(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
}

// Clique expansion over a weighted graph: vertices at 0, edges at their
// weight, triangles/tetrahedra at the max of their edges. edge_value
// returns a negative number for absent edges.
template <typename EdgeValue>
Filtration build_clique_filtration(int n, const EdgeValue& edge_value,
                                   int max_dim, double cap) {
    if (max_dim < 0 || max_dim > 3)
        throw ValidationError("complex dimension must be between 0 and 3");

    Filtration filt;
    filt.cap = cap;
    auto& out = filt.simplices;

    for (int i = 0; i < n; ++i) out.push_back(Simplex::make({i}, 0.0));
    if (max_dim == 0) return filt;

    std::vector<std::vector<int>> nbr(n);  // sorted, whole neighborhood
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = edge_value(i, j);
            if (d >= 0.0 && d <= cap) {
                nbr[i].push_back(j);
                nbr[j].push_back(i);
                out.push_back(Simplex::make({i, j}, d));
            }
        }

    if (max_dim >= 2) {
        std::vector<int> common, common2;
        for (int i = 0; i < n; ++i) {
            for (int j : nbr[i]) {
                if (j <= i) continue;
                double dij = edge_value(i, j);
                common.clear();
                std::set_intersection(nbr[i].begin(), nbr[i].end(),
                                      nbr[j].begin(), nbr[j].end(),
                                      std::back_inserter(common));
                for (int k : common) {
                    if (k <= j) continue;
                    double tri =
                        std::max({dij, edge_value(i, k), edge_value(j, k)});
                    out.push_back(Simplex::make({i, j, k}, tri));
                    if (max_dim >= 3) {
                        common2.clear();
                        std::set_intersection(common.begin(), common.end(),
                                              nbr[k].begin(), nbr[k].end(),
                                              std::back_inserter(common2));
                        for (int l : common2) {
                            if (l <= k) continue;
                            double tet = std::max(
                                {tri, edge_value(i, l), edge_value(j, l),
                                 edge_value(k, l)});
                            out.push_back(Simplex::make({i, j, k, l}, tet));
                        }
                    }
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), filtration_order);
    return filt;
}

}  // namespace

Filtration rips_filtration(const PointCloud& cloud, int max_dim, double cap) {
    if (cloud.empty()) throw ValidationError("empty point cloud");
    if (!(cap > 0.0)) throw ValidationError("cap must be positive");
    const int n = static_cast<int>(cloud.size());
    // Distances are symmetric and cheap for the cloud sizes the
    // sampler produces; recompute instead of caching n^2 doubles.
    auto edge_value = [&](int i, int j) { return cloud.distance(i, j); };
    return build_clique_filtration(n, edge_value, max_dim, cap);
}

Filtration lazy_witness_filtration(const PointCloud& cloud,
                                   const LandmarkSet& landmarks, int nu,
                                   int max_dim, double cap) {
    if (nu < 0 || nu > 2) throw ValidationError("nu must be 0, 1 or 2");
    if (landmarks.landmark_indices.empty())
        throw ValidationError("empty landmark set");
    if (!(cap > 0.0)) throw ValidationError("cap must be positive");

    const auto& lm = landmarks.landmark_indices;
    const auto& wit = landmarks.witness_indices;
    const int nl = static_cast<int>(lm.size());

    // Edge value between landmark slots a < b:
    //   min over witnesses w of max(d(a,w), d(b,w)) - m(w),
    // m(w) the nu-th smallest landmark distance of w.
    std::vector<double> best(static_cast<std::size_t>(nl) * nl, -1.0);
    std::vector<double> row(nl), sorted_row(nl);
    for (int w : wit) {
        for (int a = 0; a < nl; ++a)
            row[a] = cloud.distance(static_cast<std::size_t>(w),
                                    static_cast<std::size_t>(lm[a]));
        double mw = 0.0;
        if (nu > 0) {
            sorted_row = row;
            std::sort(sorted_row.begin(), sorted_row.end());
            mw = sorted_row[std::min(nu, nl) - 1];
        }
        for (int a = 0; a < nl; ++a)
            for (int b = a + 1; b < nl; ++b) {
                double t = std::max(row[a], row[b]) - mw;
                if (t < 0.0) t = 0.0;
                double& slot = best[static_cast<std::size_t>(a) * nl + b];
                if (slot < 0.0 || t < slot) slot = t;
            }
    }

    auto edge_value = [&](int i, int j) {
        return best[static_cast<std::size_t>(std::min(i, j)) * nl +
                    std::max(i, j)];
    };
    return build_clique_filtration(nl, edge_value, max_dim, cap);
}

std::string filtration_to_text(const Filtration& filt) {
    std::ostringstream out;
    for (const Simplex& s : filt.simplices) {
        out << format_double(s.value);
        for (std::int32_t v : s.verts()) out << ' ' << v;
        out << '\n';
    }
    return std::move(out).str();
}

}  // namespace critsamp
