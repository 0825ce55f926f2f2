#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "critsamp/filtration.hpp"

namespace critsamp {

/// death is +infinity for an essential class.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;
    friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Multiset of (birth, death) points of one homology dimension.
/// Zero-persistence points are never stored. cap records the filtration
/// cap so essential deaths can be closed off downstream.
struct PersistenceDiagram {
    int dim = 0;
    std::vector<DiagramPoint> points;
    double cap = 0.0;
};

/// Cell complex in filtration order with GF(2) boundary columns. Values
/// must be nondecreasing and every face index must precede its coface.
/// This is the common substrate for simplicial and cubical persistence.
struct FilteredComplex {
    std::vector<std::int8_t> dims;
    std::vector<double> values;
    std::vector<std::vector<std::int32_t>> boundaries;

    std::size_t size() const { return dims.size(); }
};

/// Converts a simplicial filtration, resolving faces by vertex lookup.
/// Throws ValidationError if a face is missing or ordered after its
/// coface.
FilteredComplex to_filtered_complex(const Filtration& filt);

/// Raw output of the column reduction: (creator, destroyer) index pairs
/// plus indices of essential creators.
struct ReducedPairs {
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    std::vector<std::int32_t> essential;
};

/// Standard column reduction with the clearing (twist) optimization,
/// processed from the top dimension down.
ReducedPairs reduce_filtered_complex(const FilteredComplex& fc);

/// Persistence diagrams for dimensions 0..max_hom_dim (max 2).
std::vector<PersistenceDiagram> compute_persistence(const Filtration& filt,
                                                    int max_hom_dim);
std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& fc,
                                                    int max_hom_dim,
                                                    double cap);

/// Betti numbers (b0, b1, b2) of the subcomplex at value <= t, by
/// Gaussian elimination on the boundary maps over GF(2).
std::array<int, 3> betti_numbers_at(const Filtration& filt, double t);

/// Brute-force diagram computation from persistent Betti numbers of
/// every critical-value pair (rank-based inclusion-exclusion). Guarded
/// to small instances; this is the validation oracle, kept independent
/// of the reduction path.
std::vector<PersistenceDiagram> oracle_persistence(const Filtration& filt,
                                                   int max_hom_dim);
std::vector<PersistenceDiagram> oracle_persistence(const FilteredComplex& fc,
                                                   int max_hom_dim,
                                                   double cap);

/// JSON array of {dim, birth, death}, death null for essential classes,
/// numbers printed with 17 significant digits.
std::string diagrams_to_json(const std::vector<PersistenceDiagram>& diagrams);

}  // namespace critsamp
