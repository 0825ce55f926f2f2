#include "critsamp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "critsamp/rng.hpp"

namespace critsamp {

namespace {

// Item-level parameters come from their own stream so pixel noise does
// not shift when the image size changes.
std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    return rng.next();
}

ScalarField add_noise_and_pack(int w, int h, std::vector<double> base,
                               double sigma, std::uint64_t noise_seed) {
    SplitMix64 rng(noise_seed);
    for (double& v : base) {
        v += sigma * rng.gaussian();
        v = std::clamp(v, 0.0, 1.0);
    }
    return ScalarField(w, h, std::move(base));
}

}  // namespace

// Both classes draw dark features on a bright background, so a pixel
// threshold below the background level turns each image into its own
// silhouette point cloud (the FPS arm then has per-image clouds to
// sample, as with white-background portrait crops).

ScalarField synth_disk_field(std::uint64_t seed, const SynthParams& p) {
    SplitMix64 rng(mix(seed, 1));
    const double cx = p.width / 2.0 + rng.uniform(-3.0, 3.0);
    const double cy = p.height / 2.0 + rng.uniform(-3.0, 3.0);
    const double radius = rng.uniform(10.0, 14.0);

    // A shallow dark blob with a few deeper craters inside: persistent
    // minima without any ring structure.
    const int craters = 2 + static_cast<int>(rng.bounded(3));  // 2..4
    std::vector<std::array<double, 2>> centers;
    for (int c = 0; c < craters; ++c) {
        double rho = radius * rng.uniform(0.2, 0.6);
        double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        centers.push_back({cx + rho * std::cos(theta),
                           cy + rho * std::sin(theta)});
    }

    std::vector<double> base(static_cast<std::size_t>(p.width) * p.height);
    for (int v = 0; v < p.height; ++v)
        for (int u = 0; u < p.width; ++u) {
            double dx = u - cx, dy = v - cy;
            double s = radius / 1.5;
            double darkness =
                0.55 * std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
            for (const auto& c : centers) {
                double ex = u - c[0], ey = v - c[1];
                darkness = std::max(
                    darkness,
                    0.85 * std::exp(-(ex * ex + ey * ey) / (2.0 * 2.0 * 2.0)));
            }
            base[static_cast<std::size_t>(v) * p.width + u] = 1.0 - darkness;
        }
    return add_noise_and_pack(p.width, p.height, std::move(base),
                              p.noise_sigma, mix(seed, 2));
}

ScalarField synth_annulus_field(std::uint64_t seed, const SynthParams& p) {
    SplitMix64 rng(mix(seed, 3));
    const double cx = p.width / 2.0 + rng.uniform(-3.0, 3.0);
    const double cy = p.height / 2.0 + rng.uniform(-3.0, 3.0);
    const double ring_radius = rng.uniform(16.0, 20.0);
    const double ring_width = 2.5;
    const int lobes = 7 + static_cast<int>(rng.bounded(3));  // 7..9
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);

    std::vector<double> base(static_cast<std::size_t>(p.width) * p.height);
    for (int v = 0; v < p.height; ++v)
        for (int u = 0; u < p.width; ++u) {
            double dx = u - cx, dy = v - cy;
            double d = std::sqrt(dx * dx + dy * dy);
            double radial =
                std::exp(-(d - ring_radius) * (d - ring_radius) /
                         (2.0 * ring_width * ring_width));
            // Depth modulated along the ring: the lobes become
            // well-separated critical points of the field.
            double theta = std::atan2(dy, dx);
            double angular = 0.55 + 0.30 * std::cos(lobes * theta + phase);
            base[static_cast<std::size_t>(v) * p.width + u] =
                1.0 - radial * angular;
        }
    return add_noise_and_pack(p.width, p.height, std::move(base),
                              p.noise_sigma, mix(seed, 4));
}

LabeledCorpus synth_disk_annulus_corpus(int per_class, std::uint64_t seed,
                                        const SynthParams& p) {
    LabeledCorpus corpus;
    corpus.items.reserve(2 * per_class);
    char buf[32];
    for (int i = 0; i < per_class; ++i) {
        std::snprintf(buf, sizeof(buf), "annulus/annulus_%02d", i);
        corpus.items.push_back(
            {buf, synth_annulus_field(mix(seed, 1000 + i), p), "annulus"});
    }
    for (int i = 0; i < per_class; ++i) {
        std::snprintf(buf, sizeof(buf), "disk/disk_%02d", i);
        corpus.items.push_back(
            {buf, synth_disk_field(mix(seed, 2000 + i), p), "disk"});
    }
    return corpus;
}

}  // namespace critsamp
