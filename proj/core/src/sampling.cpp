#include "critsamp/sampling.hpp"

#include <algorithm>

#include "critsamp/errors.hpp"

namespace critsamp {

std::vector<int> fps(const PointCloud& cloud, const SampleBudget& budget) {
    const int n = static_cast<int>(cloud.size());
    if (n == 0) throw ValidationError("fps on an empty cloud");
    if (budget.m < 1 || budget.m > n)
        throw ValidationError("fps budget must be in [1, cloud size]");
    if (budget.seed_index < 0 || budget.seed_index >= n)
        throw ValidationError("fps seed index out of range");

    std::vector<int> chosen;
    chosen.reserve(budget.m);
    chosen.push_back(budget.seed_index);

    std::vector<double> min_dist(n);
    for (int i = 0; i < n; ++i)
        min_dist[i] = cloud.distance(i, budget.seed_index);

    while (static_cast<int>(chosen.size()) < budget.m) {
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (min_dist[i] > min_dist[best]) best = i;  // ties: smallest index
        chosen.push_back(best);
        for (int i = 0; i < n; ++i)
            min_dist[i] = std::min(min_dist[i], cloud.distance(i, best));
    }
    return chosen;
}

double coverage_radius(const PointCloud& cloud,
                       const std::vector<int>& chosen) {
    if (chosen.empty()) throw ValidationError("coverage of an empty set");
    double radius = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double nearest = cloud.distance(i, chosen.front());
        for (std::size_t c = 1; c < chosen.size(); ++c)
            nearest = std::min(nearest, cloud.distance(i, chosen[c]));
        radius = std::max(radius, nearest);
    }
    return radius;
}

}  // namespace critsamp
