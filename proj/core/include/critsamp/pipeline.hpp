#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "critsamp/field.hpp"
#include "critsamp/homology.hpp"

namespace critsamp {

struct LabeledCorpus {
    struct Item {
        std::string id;  // unique, conventionally "<label>/<stem>"
        ScalarField field;
        std::string label;
    };
    std::vector<Item> items;

    std::size_t size() const { return items.size(); }
};

/// Symmetric nonnegative pairwise distances with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::vector<std::string> ids);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    double at(std::size_t i, std::size_t j) const {
        return entries_[i * ids_.size() + j];
    }
    void set(std::size_t i, std::size_t j, double value);
    int index_of(std::string_view id) const;  // -1 if absent

    DistanceMatrix scaled(double factor) const;

private:
    std::vector<std::string> ids_;
    std::vector<double> entries_;
};

enum class SamplerKind { Ms, Fps };
enum class ComplexKind { Rips, Witness };

struct PipelineConfig {
    SamplerKind sampler = SamplerKind::Ms;
    double r = 0.3;       // MS persistence level in [0, 1]
    int fps_budget = 0;   // 0 = auto: round(mean MS sample size)
    ComplexKind complex = ComplexKind::Rips;
    int nu = 1;           // witness relaxation, 0..2
    double cap = 0.0;     // 0 = per-item diameter of the sampled cloud
    int max_dim = 3;      // top simplex dimension
    double q = 1.0;       // Wasserstein parameter
    double lift_scale = 0.0;
    double exclusion_threshold = 1.0;
    bool include_saddles = true;
    bool include_essential = true;
    std::vector<int> knn_k{1, 2, 3, 4, 8};
    double split_fraction = 0.7;
    std::uint64_t split_seed = 0;
    int mds_dim = 2;

    void validate() const;  // throws ValidationError
};

struct PipelineResult {
    std::vector<std::vector<PersistenceDiagram>> diagrams;  // per item, k=0..2
    DistanceMatrix matrix;
    std::vector<int> sample_sizes;  // per item, same order as the corpus
    double ms_mean_size = 0.0;      // mean MS sample size (when computed)
    int fps_budget_used = 0;        // resolved budget (fps sampler only)
};

/// Steps 1-2: per-item sampling and diagrams, then the pairwise
/// cloud-distance matrix. Per-item and per-pair work run on up to
/// `threads` workers; the output is identical for any worker count.
/// threads <= 0 selects default_thread_count().
PipelineResult run_algorithm1(const LabeledCorpus& corpus,
                              const PipelineConfig& cfg, int threads = 1);

struct Embedding {
    std::vector<std::string> ids;
    int dim = 0;
    std::vector<double> coords;  // row-major, ids.size() x dim

    double at(std::size_t i, int c) const { return coords[i * dim + c]; }
};

/// Classical MDS: double-center -1/2 J (M.^2) J, eigendecompose, scale
/// the top target_dim nonnegative eigenvectors by root eigenvalue.
/// Negative eigenvalues are truncated to zero; the sign of each axis is
/// fixed so its first nonzero coordinate is nonnegative. Throws when
/// n < target_dim + 1 or no eigenvalue is positive.
Embedding classical_mds(const DistanceMatrix& matrix, int target_dim);

struct TrainTestSplit {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
};

/// Stratified by label; per-label train count = round(n * fraction)
/// with the remainder going to train, clamped so both sides stay
/// nonempty. Deterministic under seed. Throws if any label has fewer
/// than 2 items or the corpus has fewer than 2 labels.
TrainTestSplit split_train_test(const LabeledCorpus& corpus, double fraction,
                                std::uint64_t seed);
TrainTestSplit split_train_test(const std::vector<std::string>& ids,
                                const std::vector<std::string>& labels,
                                double fraction, std::uint64_t seed);

/// Majority vote among the k nearest train items by matrix distance.
/// Vote ties: smallest summed distance, then lexicographic label.
std::vector<std::string> knn_classify(const DistanceMatrix& matrix,
                                      const std::vector<std::string>& train_ids,
                                      const std::vector<std::string>& train_labels,
                                      const std::vector<std::string>& test_ids,
                                      int k);

/// Label of the nearest train-label centroid in embedding space; ties
/// go to the lexicographically smaller label.
std::vector<std::string> nearest_centroid_classify(
    const Embedding& embedding, const std::vector<std::string>& train_ids,
    const std::vector<std::string>& train_labels,
    const std::vector<std::string>& test_ids);

struct EvalReport {
    double accuracy = 0.0;
    // confusion[actual][predicted] = count
    std::map<std::string, std::map<std::string, int>> confusion;
};

EvalReport evaluate_accuracy(const std::vector<std::string>& predicted,
                             const std::vector<std::string>& actual);

/// CSV with header "id,<id1>,..."; a "# manifest: <hash>" comment line
/// is prepended when a manifest hash is supplied. Values are printed
/// with 17 significant digits (byte-stable).
std::string distance_matrix_to_csv(const DistanceMatrix& matrix,
                                   std::string_view manifest_hash = {});
DistanceMatrix distance_matrix_from_csv(std::string_view text);

std::string embedding_to_csv(const Embedding& embedding,
                             std::string_view manifest_hash = {});
Embedding embedding_from_csv(std::string_view text);

}  // namespace critsamp
