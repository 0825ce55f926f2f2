#pragma once

#include <vector>

#include "critsamp/point_cloud.hpp"

namespace critsamp {

struct SampleBudget {
    int m = 1;           // number of points to keep, 1 <= m <= cloud size
    int seed_index = 0;  // starting point
};

/// Greedy max-min (farthest point) sampling. The first point is the
/// seed; each next point maximizes the distance to the chosen set, ties
/// broken by smallest index. Output has length m, all indices distinct.
std::vector<int> fps(const PointCloud& cloud, const SampleBudget& budget);

/// Max over the cloud of the distance to the nearest chosen point.
double coverage_radius(const PointCloud& cloud,
                       const std::vector<int>& chosen);

}  // namespace critsamp
