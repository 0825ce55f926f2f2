#pragma once

#include <string>
#include <vector>

#include "critsamp/homology.hpp"

namespace critsamp {

/// Wasserstein-q distance between two persistence diagrams of the same
/// dimension, q >= 1. Ground metric is the sup norm; a point may match
/// the diagonal at cost (death - birth) / 2. Essential deaths are
/// replaced by min(a.cap, b.cap) before matching. Exact optimum via an
/// assignment solver on the augmented square cost matrix.
double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b,
                   double q);

/// Exact minimum-cost perfect assignment on a square matrix (shortest
/// augmenting paths with potentials). Returns the optimal total cost;
/// match_out[i], when requested, is the column assigned to row i.
double solve_assignment(const std::vector<std::vector<double>>& cost,
                        std::vector<int>* match_out = nullptr);

/// One side of an optimal matching; index -1 denotes the diagonal.
struct MatchedPair {
    int left = -1;
    int right = -1;
    double cost = 0.0;
};

struct WassersteinMatching {
    double value = 0.0;
    std::vector<MatchedPair> pairs;
};

/// Same optimum as wasserstein(), with the optimal matching attached
/// (debugging aid).
WassersteinMatching wasserstein_matching(const PersistenceDiagram& a,
                                         const PersistenceDiagram& b,
                                         double q);
std::string matching_to_json(const WassersteinMatching& m);

/// Cloud distance of the pipeline: max over dimensions 0..2 of the
/// Wasserstein-q distance between the per-dimension diagrams. Both
/// lists must cover dimensions 0, 1 and 2.
double cloud_distance(const std::vector<PersistenceDiagram>& a,
                      const std::vector<PersistenceDiagram>& b, double q);

}  // namespace critsamp
