#include "critsamp/landmarks.hpp"

#include <algorithm>
#include <map>

#include "critsamp/errors.hpp"
#include "critsamp/sampling.hpp"

namespace critsamp {

LandmarkSet select_landmarks(const GridPointCloud& cloud,
                             const LandmarkParams& params) {
    const int n = static_cast<int>(cloud.size());
    LandmarkSet set;

    switch (params.strategy) {
        case LandmarkStrategy::All:
            for (int i = 0; i < n; ++i) set.landmark_indices.push_back(i);
            break;
        case LandmarkStrategy::Fps: {
            SampleBudget budget{params.fps_count, params.fps_seed_index};
            set.landmark_indices = fps(cloud.metric_points(), budget);
            break;
        }
        case LandmarkStrategy::MsCritical: {
            if (params.field == nullptr)
                throw ValidationError("ms_critical landmarks need a field");
            CriticalSet critical =
                ms_sample(*params.field, params.r, params.morse_options);
            std::map<GridPoint, int> where;
            for (int i = 0; i < n; ++i) where.emplace(cloud.points[i], i);
            for (GridPoint p : critical.all_points()) {
                auto it = where.find(p);
                // Critical vertices excluded from the cloud are skipped.
                if (it != where.end()) set.landmark_indices.push_back(it->second);
            }
            std::sort(set.landmark_indices.begin(), set.landmark_indices.end());
            set.landmark_indices.erase(
                std::unique(set.landmark_indices.begin(),
                            set.landmark_indices.end()),
                set.landmark_indices.end());
            break;
        }
    }

    if (set.landmark_indices.empty())
        throw ValidationError("landmark strategy yielded an empty set");

    std::vector<char> is_landmark(n, 0);
    for (int i : set.landmark_indices) is_landmark[i] = 1;
    for (int i = 0; i < n; ++i)
        if (!is_landmark[i]) set.witness_indices.push_back(i);
    return set;
}

}  // namespace critsamp
