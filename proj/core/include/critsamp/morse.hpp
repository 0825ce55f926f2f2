#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "critsamp/field.hpp"
#include "critsamp/homology.hpp"

namespace critsamp {

enum class CellKind : std::uint8_t {
    Vertex,
    HorizontalEdge,  // anchor (u,v) -- (u+1,v)
    VerticalEdge,    // anchor (u,v) -- (u,v+1)
    Square,          // anchor (u,v), extent 1x1
};

/// Cell of the cubical complex on the pixel grid, addressed by its
/// lowest corner. Its filtration value is the max of its vertices'
/// field values (lower-star convention).
struct CubicalCell {
    std::uint8_t dim = 0;
    GridPoint anchor;
    CellKind kind = CellKind::Vertex;
};

/// Creator/destroyer pair of the sublevel-set filtration; destroyer is
/// empty for the essential class.
struct MorsePersistencePair {
    CubicalCell creator;
    std::optional<CubicalCell> destroyer;
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();
    int dim = 0;

    double persistence() const { return death - birth; }
    bool essential() const { return !destroyer.has_value(); }
};

/// Critical vertices surviving simplification at persistence_level;
/// the three lists are disjoint and each is sorted by (v, u).
struct CriticalSet {
    std::vector<GridPoint> minima;
    std::vector<GridPoint> saddles;
    std::vector<GridPoint> maxima;
    double persistence_level = 0.0;

    std::size_t size() const {
        return minima.size() + saddles.size() + maxima.size();
    }
    std::vector<GridPoint> all_points() const;
};

/// Vertices sorted ascending by (value, row-major index): a strict
/// total order even on plateaus (simulation of simplicity). Returns the
/// permutation perm[position] = vertex index.
std::vector<int> total_vertex_order(const ScalarField& field);

/// Discrete gradient from independent lower-star processing. Cells are
/// indexed on the doubled grid: cell (x, y), 0 <= x < 2W-1,
/// 0 <= y < 2H-1, has dimension (x&1) + (y&1) and id y*(2W-1)+x.
struct DiscreteGradient {
    int grid_width = 0;
    int grid_height = 0;
    std::vector<std::int32_t> pair_of;   // partner cell id, -1 if critical
    std::vector<std::uint8_t> critical;  // 1 for critical cells

    int doubled_width() const { return 2 * grid_width - 1; }
    int doubled_height() const { return 2 * grid_height - 1; }
    std::size_t cell_count() const { return pair_of.size(); }
    std::vector<int> critical_cells() const;
    /// Count per cell dimension (0, 1, 2).
    std::array<int, 3> critical_counts() const;
};

CubicalCell decode_cell(int cell_id, int grid_width);

DiscreteGradient build_lower_star_gradient(const ScalarField& field);

/// Full cubical complex in lower-star filtration order, suitable for
/// compute_persistence / oracle_persistence.
FilteredComplex cubical_filtered_complex(const ScalarField& field);

/// Persistence pairs of the sublevel-set filtration in dimensions 0 and
/// 1, by reduction of the full cubical complex. Zero-persistence pairs
/// are dropped; the single essential class is the global minimum.
std::vector<MorsePersistencePair> persistence_pairs_lower_star(
    const ScalarField& field);

struct MsSampleOptions {
    bool include_saddles = true;
    bool include_essential = true;
};

/// Critical points surviving persistence level r, gathered from the
/// sublevel filtrations of f (minima side) and 1-f (maxima side). Cells
/// of dimension >= 1 contribute their highest vertex under the total
/// order of the filtration they came from.
CriticalSet ms_sample(const ScalarField& field, double r,
                      const MsSampleOptions& options = {});

/// CSV "u,v,type" with type in {min, saddle, max}.
std::string critical_set_to_csv(const CriticalSet& critical);

}  // namespace critsamp
