#include "critsamp/homology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "critsamp/errors.hpp"
#include "critsamp/io.hpp"

namespace critsamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_complex(const FilteredComplex& fc) {
    for (std::size_t j = 0; j < fc.size(); ++j) {
        if (j > 0 && fc.values[j] < fc.values[j - 1])
            throw ValidationError("filtration property violated: values decrease");
        for (std::int32_t f : fc.boundaries[j]) {
            if (f < 0 || static_cast<std::size_t>(f) >= j)
                throw ValidationError(
                    "filtration property violated: face does not precede coface");
            if (fc.dims[f] + 1 != fc.dims[j])
                throw ValidationError("boundary face of wrong dimension");
        }
    }
}

void symmetric_difference(std::vector<std::int32_t>& a,
                          const std::vector<std::int32_t>& b,
                          std::vector<std::int32_t>& tmp) {
    tmp.clear();
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(tmp));
    a.swap(tmp);
}

}  // namespace

FilteredComplex to_filtered_complex(const Filtration& filt) {
    struct KeyHash {
        std::size_t operator()(const std::array<std::int32_t, 4>& k) const {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (std::int32_t x : k) {
                h ^= static_cast<std::uint32_t>(x);
                h *= 0x100000001b3ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    const auto& simplices = filt.simplices;
    FilteredComplex fc;
    fc.dims.reserve(simplices.size());
    fc.values.reserve(simplices.size());
    fc.boundaries.resize(simplices.size());

    std::unordered_map<std::array<std::int32_t, 4>, std::int32_t, KeyHash> index;
    index.reserve(simplices.size() * 2);

    for (std::size_t j = 0; j < simplices.size(); ++j) {
        const Simplex& s = simplices[j];
        if (j > 0 && s.value < simplices[j - 1].value)
            throw ValidationError("filtration property violated: values decrease");
        for (int t = 0; t + 1 <= s.dim; ++t)
            if (s.vertices[t] >= s.vertices[t + 1])
                throw ValidationError("simplex vertices not strictly increasing");

        fc.dims.push_back(s.dim);
        fc.values.push_back(s.value);
        if (s.dim > 0) {
            auto& faces = fc.boundaries[j];
            faces.reserve(s.dim + 1);
            for (int drop = 0; drop <= s.dim; ++drop) {
                std::array<std::int32_t, 4> key{-1, -1, -1, -1};
                int w = 0;
                for (int t = 0; t <= s.dim; ++t)
                    if (t != drop) key[w++] = s.vertices[t];
                auto it = index.find(key);
                if (it == index.end())
                    throw ValidationError(
                        "filtration property violated: missing face");
                faces.push_back(it->second);
            }
            std::sort(faces.begin(), faces.end());
        }
        index.emplace(s.vertices, static_cast<std::int32_t>(j));
    }
    return fc;
}

ReducedPairs reduce_filtered_complex(const FilteredComplex& fc) {
    validate_complex(fc);
    const std::size_t n = fc.size();

    std::vector<std::int32_t> pivot_owner(n, -1);
    std::vector<std::uint8_t> cleared(n, 0), is_destroyer(n, 0);
    std::vector<std::vector<std::int32_t>> reduced(n);

    int max_dim = 0;
    for (std::int8_t d : fc.dims) max_dim = std::max(max_dim, static_cast<int>(d));

    ReducedPairs out;
    std::vector<std::int32_t> col, tmp;

    // Top dimension first: a column that kills a creator clears that
    // creator's own column in the next (lower) pass.
    for (int d = max_dim; d >= 1; --d) {
        for (std::size_t j = 0; j < n; ++j) {
            if (fc.dims[j] != d || cleared[j]) continue;
            col = fc.boundaries[j];
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                std::int32_t owner = pivot_owner[col.back()];
                if (owner < 0) break;
                symmetric_difference(col, reduced[owner], tmp);
            }
            if (!col.empty()) {
                std::int32_t i = col.back();
                pivot_owner[i] = static_cast<std::int32_t>(j);
                cleared[i] = 1;
                is_destroyer[j] = 1;
                out.pairs.emplace_back(i, static_cast<std::int32_t>(j));
                reduced[j] = std::move(col);
                col = {};
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        if (!is_destroyer[i] && pivot_owner[i] < 0)
            out.essential.push_back(static_cast<std::int32_t>(i));
    return out;
}

namespace {

std::vector<PersistenceDiagram> diagrams_from_pairs(const FilteredComplex& fc,
                                                    const ReducedPairs& rp,
                                                    int max_hom_dim,
                                                    double cap) {
    std::vector<PersistenceDiagram> diagrams(max_hom_dim + 1);
    for (int d = 0; d <= max_hom_dim; ++d) {
        diagrams[d].dim = d;
        diagrams[d].cap = cap;
    }
    for (auto [i, j] : rp.pairs) {
        int d = fc.dims[i];
        if (d > max_hom_dim) continue;
        if (fc.values[j] > fc.values[i])
            diagrams[d].points.push_back({fc.values[i], fc.values[j]});
    }
    for (std::int32_t i : rp.essential) {
        int d = fc.dims[i];
        if (d > max_hom_dim) continue;
        diagrams[d].points.push_back({fc.values[i], kInf});
    }
    for (auto& dg : diagrams) std::sort(dg.points.begin(), dg.points.end());
    return diagrams;
}

}  // namespace

std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& fc,
                                                    int max_hom_dim,
                                                    double cap) {
    if (max_hom_dim < 0 || max_hom_dim > 2)
        throw ValidationError("homology dimension must be 0, 1 or 2");
    ReducedPairs rp = reduce_filtered_complex(fc);
    return diagrams_from_pairs(fc, rp, max_hom_dim, cap);
}

std::vector<PersistenceDiagram> compute_persistence(const Filtration& filt,
                                                    int max_hom_dim) {
    return compute_persistence(to_filtered_complex(filt), max_hom_dim,
                               filt.cap);
}

// --- GF(2) linear algebra on bit-packed vectors ------------------------

namespace {

using Words = std::vector<std::uint64_t>;

int highest_bit(const Words& w) {
    for (int wi = static_cast<int>(w.size()) - 1; wi >= 0; --wi)
        if (w[wi]) return wi * 64 + 63 - std::countl_zero(w[wi]);
    return -1;
}

int highest_bit_below(const Words& w, int bit) {
    if (bit <= 0) return -1;
    int wi = (bit - 1) / 64;
    std::uint64_t mask = (bit - 1) % 64 == 63
                             ? ~0ULL
                             : ((1ULL << (((bit - 1) % 64) + 1)) - 1);
    for (; wi >= 0; --wi, mask = ~0ULL) {
        std::uint64_t word = w[wi] & mask;
        if (word) return wi * 64 + 63 - std::countl_zero(word);
    }
    return -1;
}

void xor_into(Words& a, const Words& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

void set_bit(Words& w, int bit) { w[bit / 64] |= 1ULL << (bit % 64); }

// Rows with pairwise distinct leading bits, kept in insertion order so
// the span of any prefix of insertions is available via reduce(limit).
class Gf2Echelon {
public:
    explicit Gf2Echelon(int nbits)
        : nbits_(nbits), words_((nbits + 63) / 64), pivot_to_row_(nbits, -1) {}

    int words() const { return static_cast<int>(words_); }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Canonical representative of w modulo the span of the first
    // `limit` inserted rows (all rows when limit < 0).
    void reduce(Words& w, int limit = -1) const {
        if (limit < 0) limit = rank();
        int p = highest_bit(w);
        while (p >= 0) {
            int r = pivot_to_row_[p];
            if (r >= 0 && r < limit) {
                xor_into(w, rows_[r]);
                p = highest_bit_below(w, p);
            } else {
                p = highest_bit_below(w, p);
            }
        }
    }

    // Fully reduces w; stores it when independent. Returns whether a
    // row was added.
    bool insert(Words w) {
        reduce(w);
        int p = highest_bit(w);
        if (p < 0) return false;
        pivot_to_row_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(w));
        return true;
    }

private:
    int nbits_;
    std::size_t words_;
    std::vector<int> pivot_to_row_;
    std::vector<Words> rows_;
};

int gf2_rank(std::vector<Words> columns, int nbits) {
    Gf2Echelon ech(nbits);
    int r = 0;
    for (auto& c : columns)
        if (ech.insert(std::move(c))) ++r;
    return r;
}

Words boundary_bits(const FilteredComplex& fc, std::size_t j, int words) {
    Words w(words, 0);
    for (std::int32_t f : fc.boundaries[j]) set_bit(w, f);
    return w;
}

}  // namespace

std::array<int, 3> betti_numbers_at(const Filtration& filt, double t) {
    FilteredComplex fc = to_filtered_complex(filt);
    const std::size_t n = fc.size();
    const int words = static_cast<int>((n + 63) / 64);

    std::size_t prefix = static_cast<std::size_t>(
        std::upper_bound(fc.values.begin(), fc.values.end(), t) -
        fc.values.begin());

    std::array<int, 4> cells_per_dim{0, 0, 0, 0};
    std::array<int, 4> rank_per_dim{0, 0, 0, 0};
    for (std::size_t j = 0; j < prefix; ++j) ++cells_per_dim[fc.dims[j]];

    for (int d = 1; d <= 3; ++d) {
        if (cells_per_dim[d] == 0) continue;
        std::vector<Words> cols;
        cols.reserve(cells_per_dim[d]);
        for (std::size_t j = 0; j < prefix; ++j)
            if (fc.dims[j] == d)
                cols.push_back(boundary_bits(fc, j, words));
        rank_per_dim[d] = gf2_rank(std::move(cols), static_cast<int>(n));
    }

    std::array<int, 3> betti{};
    for (int p = 0; p <= 2; ++p) {
        int rank_above = p + 1 <= 3 ? rank_per_dim[p + 1] : 0;
        betti[p] = cells_per_dim[p] - rank_per_dim[p] - rank_above;
    }
    return betti;
}

// --- brute-force oracle -------------------------------------------------

std::vector<PersistenceDiagram> oracle_persistence(const FilteredComplex& fc,
                                                   int max_hom_dim,
                                                   double cap) {
    if (max_hom_dim < 0 || max_hom_dim > 2)
        throw ValidationError("homology dimension must be 0, 1 or 2");
    const std::size_t n = fc.size();
    if (n > 320)
        throw ValidationError("oracle_persistence: instance too large");
    validate_complex(fc);

    std::vector<PersistenceDiagram> diagrams(max_hom_dim + 1);
    for (int d = 0; d <= max_hom_dim; ++d) {
        diagrams[d].dim = d;
        diagrams[d].cap = cap;
    }
    if (n == 0) return diagrams;

    const int words = static_cast<int>((n + 63) / 64);

    // Distinct filtration values and the cell-count prefix per level.
    std::vector<double> levels(fc.values);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    const int m = static_cast<int>(levels.size());
    std::vector<std::size_t> prefix(m);
    for (int a = 0; a < m; ++a)
        prefix[a] = static_cast<std::size_t>(
            std::upper_bound(fc.values.begin(), fc.values.end(), levels[a]) -
            fc.values.begin());

    for (int p = 0; p <= max_hom_dim; ++p) {
        // Cycle space: eliminate the p-boundary columns with identity
        // tags; a column that reduces to zero contributes its tag as a
        // kernel vector. Both the kernel list and the boundary-space
        // echelon grow monotonically over levels, so prefixes of them
        // represent Z_p and B_p at every level.
        Gf2Echelon cycle_ech(static_cast<int>(n));
        std::vector<Words> cycle_tags;  // kernel vectors, insertion order
        std::vector<int> kernel_count_at(m, 0);

        Gf2Echelon bound_ech(static_cast<int>(n));
        std::vector<int> bound_rank_at(m, 0);

        {
            // Augmented elimination needs tag bookkeeping, so it is done
            // by hand instead of through Gf2Echelon.
            std::vector<Words> rows, row_tags;
            std::vector<int> pivot_to_row(n, -1);
            std::size_t j = 0;
            for (int a = 0; a < m; ++a) {
                for (; j < prefix[a]; ++j) {
                    if (fc.dims[j] == p) {
                        Words v = boundary_bits(fc, j, words);
                        Words tag(words, 0);
                        set_bit(tag, static_cast<int>(j));
                        int piv = highest_bit(v);
                        while (piv >= 0) {
                            int r = pivot_to_row[piv];
                            if (r < 0) break;
                            xor_into(v, rows[r]);
                            xor_into(tag, row_tags[r]);
                            piv = highest_bit(v);
                        }
                        if (piv < 0) {
                            cycle_tags.push_back(std::move(tag));
                        } else {
                            pivot_to_row[piv] = static_cast<int>(rows.size());
                            rows.push_back(std::move(v));
                            row_tags.push_back(std::move(tag));
                        }
                    } else if (fc.dims[j] == p + 1) {
                        bound_ech.insert(boundary_bits(fc, j, words));
                    }
                }
                kernel_count_at[a] = static_cast<int>(cycle_tags.size());
                bound_rank_at[a] = bound_ech.rank();
            }
        }

        // beta(a, b) = rank of Z_p(levels[a]) in the quotient by
        // B_p(levels[b]), i.e. the persistent Betti number.
        auto beta = [&](int a, int b) -> int {
            if (a < 0) return 0;
            Gf2Echelon extra(static_cast<int>(n));
            int added = 0;
            for (int t = 0; t < kernel_count_at[a]; ++t) {
                Words w = cycle_tags[t];
                bound_ech.reduce(w, bound_rank_at[b]);
                if (extra.insert(std::move(w))) ++added;
            }
            return added;
        };

        std::vector<std::vector<int>> beta_table(
            m, std::vector<int>(m, 0));
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) beta_table[a][b] = beta(a, b);
        auto bt = [&](int a, int b) -> int {
            return a < 0 ? 0 : beta_table[a][b];
        };

        auto& dg = diagrams[p];
        for (int i = 0; i < m; ++i) {
            for (int j2 = i + 1; j2 < m; ++j2) {
                int mult = (bt(i, j2 - 1) - bt(i, j2)) -
                           (bt(i - 1, j2 - 1) - bt(i - 1, j2));
                for (int c = 0; c < mult; ++c)
                    dg.points.push_back({levels[i], levels[j2]});
            }
            int ess = bt(i, m - 1) - bt(i - 1, m - 1);
            for (int c = 0; c < ess; ++c)
                dg.points.push_back({levels[i], kInf});
        }
        std::sort(dg.points.begin(), dg.points.end());
    }
    return diagrams;
}

std::vector<PersistenceDiagram> oracle_persistence(const Filtration& filt,
                                                   int max_hom_dim) {
    return oracle_persistence(to_filtered_complex(filt), max_hom_dim,
                              filt.cap);
}

std::string diagrams_to_json(
    const std::vector<PersistenceDiagram>& diagrams) {
    std::ostringstream out;
    out << "[";
    bool first = true;
    for (const auto& dg : diagrams) {
        for (const auto& pt : dg.points) {
            out << (first ? "\n" : ",\n");
            first = false;
            out << "  {\"dim\":" << dg.dim << ",\"birth\":"
                << format_double(pt.birth) << ",\"death\":";
            if (std::isinf(pt.death))
                out << "null";
            else
                out << format_double(pt.death);
            out << "}";
        }
    }
    out << (first ? "]" : "\n]") << "\n";
    return std::move(out).str();
}

}  // namespace critsamp
