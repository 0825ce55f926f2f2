#pragma once

#include <cstdint>

#include "critsamp/field.hpp"
#include "critsamp/pipeline.hpp"

namespace critsamp {

/// Synthetic two-class corpus: bright "disk" blobs against dark
/// background vs "annulus" rings whose intensity is modulated along the
/// ring, plus clamped Gaussian pixel noise. Fully deterministic in the
/// seed, independent of the platform's <random> implementation.
struct SynthParams {
    int width = 64;
    int height = 64;
    double noise_sigma = 0.05;
};

ScalarField synth_disk_field(std::uint64_t seed, const SynthParams& p = {});
ScalarField synth_annulus_field(std::uint64_t seed, const SynthParams& p = {});

/// per_class items of each label ("annulus", "disk"), ids
/// "<label>/<label>_<index>".
LabeledCorpus synth_disk_annulus_corpus(int per_class, std::uint64_t seed,
                                        const SynthParams& p = {});

}  // namespace critsamp
