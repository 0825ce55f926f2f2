#pragma once

#include "critsamp/filtration.hpp"
#include "critsamp/field.hpp"
#include "critsamp/morse.hpp"

namespace critsamp {

enum class LandmarkStrategy {
    MsCritical,  // critical points of the source field become landmarks
    Fps,         // greedy max-min subset
    All,         // every point a landmark, empty witness set
};

struct LandmarkParams {
    LandmarkStrategy strategy = LandmarkStrategy::All;
    // ms_critical
    const ScalarField* field = nullptr;
    double r = 0.0;
    MsSampleOptions morse_options{};
    // fps
    int fps_count = 1;
    int fps_seed_index = 0;
};

/// Splits the cloud into landmarks and witnesses. ms_critical maps the
/// critical vertices onto cloud points (vertices excluded from the
/// cloud are skipped); fps delegates to the sampler. Throws
/// ValidationError when the strategy yields no landmarks.
LandmarkSet select_landmarks(const GridPointCloud& cloud,
                             const LandmarkParams& params);

}  // namespace critsamp
