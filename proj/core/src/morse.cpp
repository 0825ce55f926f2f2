#include "critsamp/morse.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

#include "critsamp/errors.hpp"

namespace critsamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cubical cells live on the doubled grid: cell (x, y) is a vertex,
// edge or square depending on coordinate parity.
struct CubicalGrid {
    int width, height, dw, dh;

    explicit CubicalGrid(const ScalarField& f)
        : width(f.width()), height(f.height()),
          dw(2 * f.width() - 1), dh(2 * f.height() - 1) {}

    int cell_count() const { return dw * dh; }
    int id(int x, int y) const { return y * dw + x; }
    int x_of(int c) const { return c % dw; }
    int y_of(int c) const { return c / dw; }
    int dim_of(int c) const { return (x_of(c) & 1) + (y_of(c) & 1); }

    // Vertex indices (row-major pixel index) of a cell, 1/2/4 entries.
    int vertices_of(int c, int out[4]) const {
        int x = x_of(c), y = y_of(c);
        int u = x / 2, v = y / 2;
        bool ox = x & 1, oy = y & 1;
        int n = 0;
        out[n++] = v * width + u;
        if (ox) out[n++] = v * width + (u + 1);
        if (oy) out[n++] = (v + 1) * width + u;
        if (ox && oy) out[n++] = (v + 1) * width + (u + 1);
        return n;
    }
};

}  // namespace

CubicalCell decode_cell(int cell_id, int grid_width) {
    int dw = 2 * grid_width - 1;
    int x = cell_id % dw, y = cell_id / dw;
    CubicalCell cell;
    cell.anchor = {x / 2, y / 2};
    bool ox = x & 1, oy = y & 1;
    if (ox && oy) {
        cell.dim = 2;
        cell.kind = CellKind::Square;
    } else if (ox) {
        cell.dim = 1;
        cell.kind = CellKind::HorizontalEdge;
    } else if (oy) {
        cell.dim = 1;
        cell.kind = CellKind::VerticalEdge;
    } else {
        cell.dim = 0;
        cell.kind = CellKind::Vertex;
    }
    return cell;
}

std::vector<int> total_vertex_order(const ScalarField& field) {
    const auto& values = field.values();
    std::vector<int> perm(values.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    return perm;
}

std::vector<int> DiscreteGradient::critical_cells() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < critical.size(); ++c)
        if (critical[c]) out.push_back(static_cast<int>(c));
    return out;
}

std::array<int, 3> DiscreteGradient::critical_counts() const {
    std::array<int, 3> counts{0, 0, 0};
    int dw = doubled_width();
    for (std::size_t c = 0; c < critical.size(); ++c)
        if (critical[c]) {
            int x = static_cast<int>(c) % dw, y = static_cast<int>(c) / dw;
            ++counts[(x & 1) + (y & 1)];
        }
    return counts;
}

DiscreteGradient build_lower_star_gradient(const ScalarField& field) {
    CubicalGrid grid(field);
    std::vector<int> perm = total_vertex_order(field);
    std::vector<int> rank(perm.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos)
        rank[perm[pos]] = static_cast<int>(pos);

    DiscreteGradient g;
    g.grid_width = grid.width;
    g.grid_height = grid.height;
    g.pair_of.assign(grid.cell_count(), -1);
    g.critical.assign(grid.cell_count(), 0);

    // Cell of the lower star of the vertex being processed. key holds
    // the ranks of the non-apex vertices, sorted descending; cells are
    // compared lexicographically by it (simulation of simplicity).
    struct LCell {
        int id = -1;
        int dim = 0;
        std::array<int, 3> key{-1, -1, -1};
        bool done = false;
        bool in_zero = false;
        bool in_one = false;
        int face_a = -1, face_b = -1;  // local edge indices of a square
    };

    auto key_less = [](const LCell& a, const LCell& b) {
        return a.key < b.key;
    };

    std::vector<LCell> cells;
    cells.reserve(8);

    for (int v = 0; v < grid.height; ++v) {
        for (int u = 0; u < grid.width; ++u) {
            const int apex_rank = rank[v * grid.width + u];
            const int cx = 2 * u, cy = 2 * v;
            cells.clear();

            auto try_add = [&](int x, int y) {
                if (x < 0 || y < 0 || x >= grid.dw || y >= grid.dh) return;
                int c = grid.id(x, y);
                int verts[4];
                int nverts = grid.vertices_of(c, verts);
                LCell lc;
                lc.id = c;
                lc.dim = grid.dim_of(c);
                int w = 0;
                for (int i = 0; i < nverts; ++i) {
                    int rv = rank[verts[i]];
                    if (rv == apex_rank) continue;
                    if (rv > apex_rank) return;  // not in this lower star
                    lc.key[w++] = rv;
                }
                std::sort(lc.key.begin(), lc.key.begin() + w,
                          std::greater<int>());
                cells.push_back(lc);
            };

            try_add(cx - 1, cy);
            try_add(cx + 1, cy);
            try_add(cx, cy - 1);
            try_add(cx, cy + 1);
            try_add(cx - 1, cy - 1);
            try_add(cx + 1, cy - 1);
            try_add(cx - 1, cy + 1);
            try_add(cx + 1, cy + 1);

            const int vertex_cell = grid.id(cx, cy);
            if (cells.empty()) {
                g.critical[vertex_cell] = 1;
                continue;
            }

            // Wire squares to their two in-star edges.
            for (auto& sq : cells) {
                if (sq.dim != 2) continue;
                int sx = grid.x_of(sq.id), sy = grid.y_of(sq.id);
                int edge_ids[2] = {grid.id(cx, sy), grid.id(sx, cy)};
                int slot = 0;
                for (std::size_t e = 0; e < cells.size(); ++e)
                    if (cells[e].dim == 1 &&
                        (cells[e].id == edge_ids[0] || cells[e].id == edge_ids[1]))
                        (slot++ == 0 ? sq.face_a : sq.face_b) =
                            static_cast<int>(e);
                assert(slot == 2);
            }

            // Pair the vertex with its steepest edge.
            int delta = -1;
            for (std::size_t e = 0; e < cells.size(); ++e)
                if (cells[e].dim == 1 &&
                    (delta < 0 || key_less(cells[e], cells[delta])))
                    delta = static_cast<int>(e);
            g.pair_of[vertex_cell] = cells[delta].id;
            g.pair_of[cells[delta].id] = vertex_cell;
            cells[delta].done = true;

            for (auto& lc : cells)
                if (lc.dim == 1 && !lc.done) lc.in_zero = true;

            auto avail_faces = [&](const LCell& sq, int& only) {
                int cnt = 0;
                only = -1;
                for (int f : {sq.face_a, sq.face_b})
                    if (f >= 0 && !cells[f].done) {
                        ++cnt;
                        only = f;
                    }
                return cnt;
            };

            auto push_cofaces = [&](int edge_local) {
                for (auto& sq : cells) {
                    if (sq.dim != 2 || sq.done || sq.in_one) continue;
                    if (sq.face_a != edge_local && sq.face_b != edge_local)
                        continue;
                    int only;
                    if (avail_faces(sq, only) == 1) sq.in_one = true;
                }
            };

            push_cofaces(delta);

            for (;;) {
                // Drain PQone: squares with exactly one available face.
                for (;;) {
                    int pick = -1;
                    for (std::size_t i = 0; i < cells.size(); ++i)
                        if (cells[i].in_one && !cells[i].done &&
                            (pick < 0 || key_less(cells[i], cells[pick])))
                            pick = static_cast<int>(i);
                    if (pick < 0) break;
                    LCell& sq = cells[pick];
                    sq.in_one = false;
                    int only;
                    int cnt = avail_faces(sq, only);
                    if (cnt == 0) {
                        sq.in_zero = true;
                        continue;
                    }
                    LCell& lam = cells[only];
                    g.pair_of[lam.id] = sq.id;
                    g.pair_of[sq.id] = lam.id;
                    lam.done = true;
                    sq.done = true;
                    lam.in_zero = false;
                    push_cofaces(only);
                }
                // Lowest remaining cell becomes critical.
                int pick = -1;
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (cells[i].in_zero && !cells[i].done &&
                        (pick < 0 || key_less(cells[i], cells[pick])))
                        pick = static_cast<int>(i);
                if (pick < 0) break;
                LCell& gamma = cells[pick];
                gamma.in_zero = false;
                gamma.done = true;
                g.critical[gamma.id] = 1;
                if (gamma.dim == 1) push_cofaces(pick);
            }
        }
    }
    return g;
}

namespace {

// Cells ordered by their vertex ranks sorted descending, compared
// lexicographically: this refines the sublevel order and puts every
// face before its cofaces. cell_ids_out, when given, receives the cell
// id at each filtration position.
FilteredComplex build_cubical_complex(const ScalarField& field,
                                      std::vector<int>* cell_ids_out) {
    CubicalGrid grid(field);
    std::vector<int> perm = total_vertex_order(field);
    std::vector<int> rank(perm.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos)
        rank[perm[pos]] = static_cast<int>(pos);
    const auto& values = field.values();

    const int n = grid.cell_count();
    std::vector<std::array<int, 5>> keyed(n);  // key[0..3] + cell id
    for (int c = 0; c < n; ++c) {
        int verts[4];
        int nv = grid.vertices_of(c, verts);
        std::array<int, 5> k{-1, -1, -1, -1, c};
        for (int i = 0; i < nv; ++i) k[i] = rank[verts[i]];
        std::sort(k.begin(), k.begin() + nv, std::greater<int>());
        keyed[c] = k;
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<std::int32_t> pos_of(n);
    FilteredComplex fc;
    fc.dims.resize(n);
    fc.values.resize(n);
    fc.boundaries.resize(n);
    if (cell_ids_out) cell_ids_out->resize(n);
    for (int p = 0; p < n; ++p) {
        int c = keyed[p][4];
        pos_of[c] = p;
        fc.dims[p] = static_cast<std::int8_t>(grid.dim_of(c));
        fc.values[p] = values[perm[keyed[p][0]]];
        if (cell_ids_out) (*cell_ids_out)[p] = c;
    }
    for (int p = 0; p < n; ++p) {
        int c = keyed[p][4];
        int x = grid.x_of(c), y = grid.y_of(c);
        auto& faces = fc.boundaries[p];
        if (grid.dim_of(c) == 1) {
            bool horizontal = x & 1;
            faces = horizontal
                        ? std::vector<std::int32_t>{pos_of[grid.id(x - 1, y)],
                                                    pos_of[grid.id(x + 1, y)]}
                        : std::vector<std::int32_t>{pos_of[grid.id(x, y - 1)],
                                                    pos_of[grid.id(x, y + 1)]};
        } else if (grid.dim_of(c) == 2) {
            faces = {pos_of[grid.id(x - 1, y)], pos_of[grid.id(x + 1, y)],
                     pos_of[grid.id(x, y - 1)], pos_of[grid.id(x, y + 1)]};
        }
        std::sort(faces.begin(), faces.end());
    }
    return fc;
}

}  // namespace

FilteredComplex cubical_filtered_complex(const ScalarField& field) {
    return build_cubical_complex(field, nullptr);
}

std::vector<MorsePersistencePair> persistence_pairs_lower_star(
    const ScalarField& field) {
    std::vector<int> cell_ids;
    FilteredComplex fc = build_cubical_complex(field, &cell_ids);
    ReducedPairs rp = reduce_filtered_complex(fc);
    const int width = field.width();

    std::vector<MorsePersistencePair> out;
    for (auto [i, j] : rp.pairs) {
        if (fc.dims[i] > 1) continue;
        if (fc.values[j] <= fc.values[i]) continue;  // zero persistence
        MorsePersistencePair pair;
        pair.creator = decode_cell(cell_ids[i], width);
        pair.destroyer = decode_cell(cell_ids[j], width);
        pair.birth = fc.values[i];
        pair.death = fc.values[j];
        pair.dim = fc.dims[i];
        out.push_back(pair);
    }
    for (std::int32_t i : rp.essential) {
        if (fc.dims[i] > 1) continue;
        MorsePersistencePair pair;
        pair.creator = decode_cell(cell_ids[i], width);
        pair.birth = fc.values[i];
        pair.death = kInf;
        pair.dim = fc.dims[i];
        out.push_back(pair);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.death != b.death) return a.death < b.death;
        auto ka = std::tie(a.creator.anchor.v, a.creator.anchor.u);
        auto kb = std::tie(b.creator.anchor.v, b.creator.anchor.u);
        return ka < kb;
    });
    return out;
}

namespace {

// Highest vertex of a cell under the given total order.
GridPoint cell_top_vertex(const CubicalGrid& grid,
                          const std::vector<int>& rank, const CubicalCell& cell) {
    int x = 2 * cell.anchor.u + (cell.kind == CellKind::HorizontalEdge ||
                                 cell.kind == CellKind::Square);
    int y = 2 * cell.anchor.v + (cell.kind == CellKind::VerticalEdge ||
                                 cell.kind == CellKind::Square);
    int c = grid.id(x, y);
    int verts[4];
    int nv = grid.vertices_of(c, verts);
    int best = verts[0];
    for (int i = 1; i < nv; ++i)
        if (rank[verts[i]] > rank[best]) best = verts[i];
    return {best % grid.width, best / grid.width};
}

enum Role : int { kMin = 0, kMax = 1, kSaddle = 2 };

}  // namespace

CriticalSet ms_sample(const ScalarField& field, double r,
                      const MsSampleOptions& options) {
    if (!(r >= 0.0 && r <= 1.0))
        throw ValidationError("persistence level must be in [0, 1]");

    // role per vertex index; extrema win over saddles on collision.
    std::map<int, int> roles;
    CubicalGrid grid(field);
    auto note = [&](GridPoint p, int role) {
        int idx = p.v * grid.width + p.u;
        auto [it, inserted] = roles.emplace(idx, role);
        if (!inserted) it->second = std::min(it->second, role);
    };

    auto harvest = [&](const ScalarField& f, bool inverted) {
        std::vector<int> perm = total_vertex_order(f);
        std::vector<int> rank(perm.size());
        for (std::size_t pos = 0; pos < perm.size(); ++pos)
            rank[perm[pos]] = static_cast<int>(pos);

        const int extremum = inverted ? kMax : kMin;
        const int opposite = inverted ? kMin : kMax;
        for (const auto& pair : persistence_pairs_lower_star(f)) {
            if (pair.essential()) {
                if (options.include_essential)
                    note(cell_top_vertex(grid, rank, pair.creator), extremum);
                continue;
            }
            if (pair.persistence() < r) continue;
            if (pair.dim == 0) {
                note(pair.creator.anchor, extremum);
                if (options.include_saddles)
                    note(cell_top_vertex(grid, rank, *pair.destroyer), kSaddle);
            } else {
                if (options.include_saddles)
                    note(cell_top_vertex(grid, rank, pair.creator), kSaddle);
                note(cell_top_vertex(grid, rank, *pair.destroyer), opposite);
            }
        }
    };

    harvest(field, false);
    harvest(field.inverted(), true);

    CriticalSet cs;
    cs.persistence_level = r;
    for (auto [idx, role] : roles) {
        GridPoint p{idx % grid.width, idx / grid.width};
        if (role == kMin)
            cs.minima.push_back(p);
        else if (role == kMax)
            cs.maxima.push_back(p);
        else
            cs.saddles.push_back(p);
    }
    auto by_row = [](GridPoint a, GridPoint b) {
        return std::tie(a.v, a.u) < std::tie(b.v, b.u);
    };
    std::sort(cs.minima.begin(), cs.minima.end(), by_row);
    std::sort(cs.saddles.begin(), cs.saddles.end(), by_row);
    std::sort(cs.maxima.begin(), cs.maxima.end(), by_row);
    return cs;
}

std::vector<GridPoint> CriticalSet::all_points() const {
    std::vector<GridPoint> out;
    out.reserve(size());
    out.insert(out.end(), minima.begin(), minima.end());
    out.insert(out.end(), saddles.begin(), saddles.end());
    out.insert(out.end(), maxima.begin(), maxima.end());
    return out;
}

std::string critical_set_to_csv(const CriticalSet& critical) {
    std::ostringstream out;
    out << "u,v,type\n";
    for (auto p : critical.minima) out << p.u << ',' << p.v << ",min\n";
    for (auto p : critical.saddles) out << p.u << ',' << p.v << ",saddle\n";
    for (auto p : critical.maxima) out << p.u << ',' << p.v << ",max\n";
    return std::move(out).str();
}

}  // namespace critsamp
