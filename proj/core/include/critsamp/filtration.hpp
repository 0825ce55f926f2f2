#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "critsamp/point_cloud.hpp"

namespace critsamp {

/// Simplex on at most 4 vertex indices (dimension <= 3), vertices
/// strictly increasing, unused slots -1.
struct Simplex {
    std::array<std::int32_t, 4> vertices{-1, -1, -1, -1};
    std::int8_t dim = 0;
    double value = 0.0;

    static Simplex make(std::initializer_list<std::int32_t> verts,
                        double value);
    std::span<const std::int32_t> verts() const {
        return {vertices.data(), static_cast<std::size_t>(dim) + 1};
    }
};

/// Simplices sorted by (value, dimension, lexicographic vertices), so
/// every face precedes its cofaces. cap is the largest filtration value
/// considered when the complex was built.
struct Filtration {
    std::vector<Simplex> simplices;
    double cap = 0.0;
};

struct LandmarkSet {
    std::vector<int> landmark_indices;
    std::vector<int> witness_indices;
};

/// Vietoris-Rips filtration: vertices at 0, edge {i,j} at d(i,j) when
/// <= cap, higher simplices at the max of their edges (clique rule).
/// max_dim is the top simplex dimension, at most 3.
Filtration rips_filtration(const PointCloud& cloud, int max_dim, double cap);

/// Lazy witness filtration on the landmark vertices. For witness w,
/// m(w) is the nu-th smallest landmark distance (0 when nu = 0); edge
/// {a,b} enters at min over w of max(d(a,w), d(b,w)) - m(w); higher
/// simplices follow the clique rule.
Filtration lazy_witness_filtration(const PointCloud& cloud,
                                   const LandmarkSet& landmarks, int nu,
                                   int max_dim, double cap);

/// One simplex per line, "value v0 v1 ...", in filtration order.
/// Byte-stable for a fixed input.
std::string filtration_to_text(const Filtration& filt);

}  // namespace critsamp
