#include "critsamp/pipeline.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "critsamp/errors.hpp"
#include "critsamp/filtration.hpp"
#include "critsamp/io.hpp"
#include "critsamp/metrics.hpp"
#include "critsamp/morse.hpp"
#include "critsamp/parallel.hpp"
#include "critsamp/rng.hpp"
#include "critsamp/sampling.hpp"

namespace critsamp {

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)), entries_(ids_.size() * ids_.size(), 0.0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
    entries_[i * ids_.size() + j] = value;
    entries_[j * ids_.size() + i] = value;
}

int DistanceMatrix::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
        if (ids_[i] == id) return static_cast<int>(i);
    return -1;
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
    DistanceMatrix out(ids_);
    for (std::size_t i = 0; i < ids_.size(); ++i)
        for (std::size_t j = 0; j < ids_.size(); ++j)
            out.entries_[i * ids_.size() + j] =
                entries_[i * ids_.size() + j] * factor;
    return out;
}

void PipelineConfig::validate() const {
    if (!(r >= 0.0 && r <= 1.0))
        throw ValidationError("r must be in [0, 1]");
    if (fps_budget < 0) throw ValidationError("fps budget must be >= 0");
    if (nu < 0 || nu > 2) throw ValidationError("nu must be 0, 1 or 2");
    if (cap < 0.0) throw ValidationError("cap must be >= 0");
    if (max_dim < 1 || max_dim > 3)
        throw ValidationError("max_dim must be 1, 2 or 3");
    if (!(q >= 1.0)) throw ValidationError("q must be >= 1");
    if (lift_scale < 0.0) throw ValidationError("lift_scale must be >= 0");
    if (!(exclusion_threshold > 0.0 && exclusion_threshold <= 1.0))
        throw ValidationError("exclusion threshold must be in (0, 1]");
    if (knn_k.empty()) throw ValidationError("knn_k must be nonempty");
    for (int k : knn_k)
        if (k < 1) throw ValidationError("knn k values must be >= 1");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw ValidationError("split fraction must be in (0, 1)");
    if (mds_dim < 1) throw ValidationError("mds dimension must be >= 1");
}

namespace {

// Runs fn over all indices; if any item fails, rethrows the error of
// the smallest index annotated with that item's id.
void for_each_item(std::size_t n, int threads,
                   const std::vector<LabeledCorpus::Item>& items,
                   const std::function<void(std::size_t)>& fn) {
    parallel_for(n, threads, [&](std::size_t i) {
        try {
            fn(i);
        } catch (const std::exception& e) {
            throw ValidationError("item " + items[i].id + ": " + e.what());
        }
    });
}

}  // namespace

PipelineResult run_algorithm1(const LabeledCorpus& corpus,
                              const PipelineConfig& cfg, int threads) {
    cfg.validate();
    const std::size_t n = corpus.size();
    if (n == 0) throw ValidationError("empty corpus");
    if (threads <= 0) threads = default_thread_count();

    // Full point clouds X_i (threshold filter + lifted metric).
    std::vector<GridPointCloud> clouds(n);
    for_each_item(n, threads, corpus.items, [&](std::size_t i) {
        clouds[i] = to_point_cloud(corpus.items[i].field,
                                   cfg.exclusion_threshold, cfg.lift_scale);
    });

    PipelineResult result;
    result.sample_sizes.assign(n, 0);

    // Step 1a. MS sample sizes are needed for the fps auto budget, so
    // the MS pass also runs for that case.
    MsSampleOptions morse_opts{cfg.include_saddles, cfg.include_essential};
    std::vector<std::vector<int>> sampled(n);  // indices into clouds[i]
    bool need_ms =
        cfg.sampler == SamplerKind::Ms || cfg.fps_budget == 0;

    std::vector<int> ms_sizes(n, 0);
    if (need_ms) {
        for_each_item(n, threads, corpus.items, [&](std::size_t i) {
            CriticalSet critical =
                ms_sample(corpus.items[i].field, cfg.r, morse_opts);
            std::vector<int> indices;
            {
                std::map<GridPoint, int> where;
                for (std::size_t p = 0; p < clouds[i].points.size(); ++p)
                    where.emplace(clouds[i].points[p], static_cast<int>(p));
                for (GridPoint g : critical.all_points()) {
                    auto it = where.find(g);
                    if (it != where.end()) indices.push_back(it->second);
                }
            }
            std::sort(indices.begin(), indices.end());
            if (indices.empty())
                throw ValidationError("empty sample");
            ms_sizes[i] = static_cast<int>(indices.size());
            if (cfg.sampler == SamplerKind::Ms) sampled[i] = std::move(indices);
        });
        double mean = 0.0;
        for (int s : ms_sizes) mean += s;
        mean /= static_cast<double>(n);
        result.ms_mean_size = mean;
    }

    if (cfg.sampler == SamplerKind::Fps) {
        int budget = cfg.fps_budget > 0
                         ? cfg.fps_budget
                         : static_cast<int>(std::llround(result.ms_mean_size));
        budget = std::max(budget, 1);
        result.fps_budget_used = budget;
        for_each_item(n, threads, corpus.items, [&](std::size_t i) {
            PointCloud pc = clouds[i].metric_points();
            int m = std::min<int>(budget, static_cast<int>(pc.size()));
            sampled[i] = fps(pc, SampleBudget{m, 0});
            std::sort(sampled[i].begin(), sampled[i].end());
        });
    }

    for (std::size_t i = 0; i < n; ++i)
        result.sample_sizes[i] = static_cast<int>(sampled[i].size());

    // Step 1b: diagrams for k = 0, 1, 2.
    result.diagrams.resize(n);
    for_each_item(n, threads, corpus.items, [&](std::size_t i) {
        GridPointCloud sample_cloud = clouds[i].subset(sampled[i]);
        PointCloud sample_points = sample_cloud.metric_points();
        double cap = cfg.cap;
        if (cap <= 0.0) {
            cap = sample_points.diameter();
            if (cap <= 0.0) cap = std::numeric_limits<double>::min();
        }
        Filtration filt;
        if (cfg.complex == ComplexKind::Rips) {
            filt = rips_filtration(sample_points, cfg.max_dim, cap);
        } else {
            PointCloud all_points = clouds[i].metric_points();
            LandmarkSet lm;
            lm.landmark_indices = sampled[i];
            std::vector<char> is_lm(all_points.size(), 0);
            for (int s : sampled[i]) is_lm[s] = 1;
            for (std::size_t p = 0; p < all_points.size(); ++p)
                if (!is_lm[p])
                    lm.witness_indices.push_back(static_cast<int>(p));
            filt = lazy_witness_filtration(all_points, lm, cfg.nu,
                                           cfg.max_dim, cap);
        }
        result.diagrams[i] = compute_persistence(filt, 2);
    });

    // Step 2: pairwise cloud distances into M.
    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& item : corpus.items) ids.push_back(item.id);
    {
        std::set<std::string> unique(ids.begin(), ids.end());
        if (unique.size() != ids.size())
            throw ValidationError("duplicate corpus ids");
    }
    result.matrix = DistanceMatrix(std::move(ids));

    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
    index_pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) index_pairs.emplace_back(i, j);
    parallel_for(index_pairs.size(), threads, [&](std::size_t k) {
        auto [i, j] = index_pairs[k];
        double c = cloud_distance(result.diagrams[i], result.diagrams[j],
                                  cfg.q);
        result.matrix.set(i, j, c);
    });
    return result;
}

Embedding classical_mds(const DistanceMatrix& matrix, int target_dim) {
    const int n = static_cast<int>(matrix.size());
    if (target_dim < 1) throw ValidationError("target dimension must be >= 1");
    if (n < target_dim + 1)
        throw ValidationError("need at least target_dim + 1 items");

    // Double-centered squared distances: b_ij =
    // -(d_ij^2 - row_i - col_j + grand) / 2.
    Eigen::MatrixXd d2(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double d = matrix.at(i, j);
            d2(i, j) = d * d;
        }
    Eigen::VectorXd row_mean = d2.rowwise().mean();
    double grand = row_mean.mean();
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - row_mean(j) + grand);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success)
        throw ValidationError("eigendecomposition failed");
    const auto& evals = solver.eigenvalues();   // ascending
    const auto& evecs = solver.eigenvectors();
    if (!(evals(n - 1) > 0.0))
        throw ValidationError("degenerate distance matrix: no positive eigenvalue");

    Embedding emb;
    emb.ids = matrix.ids();
    emb.dim = target_dim;
    emb.coords.assign(static_cast<std::size_t>(n) * target_dim, 0.0);
    for (int c = 0; c < target_dim; ++c) {
        int col = n - 1 - c;
        double lambda = evals(col);
        if (lambda <= 0.0) continue;  // truncated axis stays zero
        double scale = std::sqrt(lambda);
        // Sign convention: first nonzero coordinate nonnegative.
        double col_max = evecs.col(col).cwiseAbs().maxCoeff();
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            double x = evecs(i, col);
            if (std::abs(x) > 1e-12 * col_max) {
                sign = x < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (int i = 0; i < n; ++i)
            emb.coords[static_cast<std::size_t>(i) * target_dim + c] =
                sign * scale * evecs(i, col);
    }
    return emb;
}

TrainTestSplit split_train_test(const LabeledCorpus& corpus, double fraction,
                                std::uint64_t seed) {
    std::vector<std::string> ids, labels;
    ids.reserve(corpus.size());
    labels.reserve(corpus.size());
    for (const auto& item : corpus.items) {
        ids.push_back(item.id);
        labels.push_back(item.label);
    }
    return split_train_test(ids, labels, fraction, seed);
}

TrainTestSplit split_train_test(const std::vector<std::string>& ids,
                                const std::vector<std::string>& labels,
                                double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ValidationError("split fraction must be in (0, 1)");
    if (ids.size() != labels.size())
        throw ValidationError("ids/labels size mismatch");

    std::map<std::string, std::vector<std::string>> by_label;
    for (std::size_t i = 0; i < ids.size(); ++i)
        by_label[labels[i]].push_back(ids[i]);
    if (by_label.size() < 2)
        throw ValidationError("need at least 2 labels to split");

    TrainTestSplit split;
    SplitMix64 rng(seed);
    for (auto& [label, ids] : by_label) {
        const int m = static_cast<int>(ids.size());
        if (m < 2)
            throw ValidationError("label '" + label + "' has fewer than 2 items");
        // Fisher-Yates with the portable generator.
        for (int i = m - 1; i > 0; --i) {
            int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
            std::swap(ids[i], ids[j]);
        }
        // Round to nearest, remainder to train; both sides stay nonempty.
        int train_count = static_cast<int>(std::floor(m * fraction + 0.5));
        train_count = std::clamp(train_count, 1, m - 1);
        for (int i = 0; i < m; ++i)
            (i < train_count ? split.train_ids : split.test_ids)
                .push_back(ids[i]);
    }
    std::sort(split.train_ids.begin(), split.train_ids.end());
    std::sort(split.test_ids.begin(), split.test_ids.end());
    return split;
}

std::vector<std::string> knn_classify(
    const DistanceMatrix& matrix, const std::vector<std::string>& train_ids,
    const std::vector<std::string>& train_labels,
    const std::vector<std::string>& test_ids, int k) {
    if (train_ids.size() != train_labels.size())
        throw ValidationError("train ids/labels size mismatch");
    if (k < 1 || k > static_cast<int>(train_ids.size()))
        throw ValidationError("k must be in [1, train size]");

    std::vector<int> train_rows(train_ids.size());
    for (std::size_t t = 0; t < train_ids.size(); ++t) {
        train_rows[t] = matrix.index_of(train_ids[t]);
        if (train_rows[t] < 0)
            throw ValidationError("train id missing from matrix: " + train_ids[t]);
    }

    std::vector<std::string> predictions;
    predictions.reserve(test_ids.size());
    for (const auto& id : test_ids) {
        int row = matrix.index_of(id);
        if (row < 0)
            throw ValidationError("test id missing from matrix: " + id);

        // (distance, train position): positions break distance ties.
        std::vector<std::pair<double, std::size_t>> order(train_ids.size());
        for (std::size_t t = 0; t < train_ids.size(); ++t)
            order[t] = {matrix.at(row, train_rows[t]), t};
        std::sort(order.begin(), order.end());

        std::map<std::string, std::pair<int, double>> votes;  // count, dist sum
        for (int t = 0; t < k; ++t) {
            auto& v = votes[train_labels[order[t].second]];
            v.first += 1;
            v.second += order[t].first;
        }
        std::string best;
        std::pair<int, double> best_score{0, 0.0};
        for (const auto& [label, score] : votes) {
            bool wins = score.first > best_score.first ||
                        (score.first == best_score.first &&
                         score.second < best_score.second);
            if (best.empty() || wins) {
                best = label;
                best_score = score;
            }
            // equal count and sum: map order keeps the smaller label
        }
        predictions.push_back(best);
    }
    return predictions;
}

std::vector<std::string> nearest_centroid_classify(
    const Embedding& embedding, const std::vector<std::string>& train_ids,
    const std::vector<std::string>& train_labels,
    const std::vector<std::string>& test_ids) {
    if (train_ids.size() != train_labels.size())
        throw ValidationError("train ids/labels size mismatch");

    std::map<std::string, int> row_of;
    for (std::size_t i = 0; i < embedding.ids.size(); ++i)
        row_of[embedding.ids[i]] = static_cast<int>(i);
    auto row_for = [&](const std::string& id) {
        auto it = row_of.find(id);
        if (it == row_of.end())
            throw ValidationError("id missing from embedding: " + id);
        return it->second;
    };

    std::map<std::string, std::pair<std::vector<double>, int>> centroids;
    for (std::size_t t = 0; t < train_ids.size(); ++t) {
        auto& [sum, count] = centroids[train_labels[t]];
        sum.resize(embedding.dim, 0.0);
        int row = row_for(train_ids[t]);
        for (int c = 0; c < embedding.dim; ++c) sum[c] += embedding.at(row, c);
        ++count;
    }
    for (auto& [label, entry] : centroids) {
        if (entry.second == 0)
            throw ValidationError("empty label group: " + label);
        for (double& s : entry.first) s /= entry.second;
    }

    std::vector<std::string> predictions;
    predictions.reserve(test_ids.size());
    for (const auto& id : test_ids) {
        int row = row_for(id);
        std::string best;
        double best_dist = 0.0;
        for (const auto& [label, entry] : centroids) {
            double dist = 0.0;
            for (int c = 0; c < embedding.dim; ++c) {
                double d = embedding.at(row, c) - entry.first[c];
                dist += d * d;
            }
            // ties go to the lexicographically smaller label (map order)
            if (best.empty() || dist < best_dist) {
                best = label;
                best_dist = dist;
            }
        }
        predictions.push_back(best);
    }
    return predictions;
}

EvalReport evaluate_accuracy(const std::vector<std::string>& predicted,
                             const std::vector<std::string>& actual) {
    if (predicted.size() != actual.size())
        throw ValidationError("prediction/actual length mismatch");
    EvalReport report;
    int correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == actual[i]) ++correct;
        report.confusion[actual[i]][predicted[i]] += 1;
    }
    report.accuracy = predicted.empty()
                          ? 0.0
                          : static_cast<double>(correct) / predicted.size();
    return report;
}

// --- CSV formats --------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> csv_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (!line.empty() && line.front() != '#')
                lines.emplace_back(line);
            start = i + 1;
        }
    }
    return lines;
}

double parse_double(const std::string& token) {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size())
        throw ValidationError("bad numeric field: " + token);
    return v;
}

}  // namespace

std::string distance_matrix_to_csv(const DistanceMatrix& matrix,
                                   std::string_view manifest_hash) {
    std::ostringstream out;
    if (!manifest_hash.empty()) out << "# manifest: " << manifest_hash << "\n";
    out << "id";
    for (const auto& id : matrix.ids()) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.ids()[i];
        for (std::size_t j = 0; j < matrix.size(); ++j)
            out << ',' << format_double(matrix.at(i, j));
        out << '\n';
    }
    return std::move(out).str();
}

DistanceMatrix distance_matrix_from_csv(std::string_view text) {
    auto lines = csv_lines(text);
    if (lines.empty()) throw ValidationError("empty distance matrix CSV");
    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "id")
        throw ValidationError("distance matrix CSV must start with an id header");
    std::vector<std::string> ids(header.begin() + 1, header.end());
    if (lines.size() != ids.size() + 1)
        throw ValidationError("distance matrix CSV row count mismatch");

    const std::size_t n = ids.size();
    std::vector<double> raw(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = split_csv_line(lines[i + 1]);
        if (row.size() != n + 1 || row[0] != ids[i])
            throw ValidationError("distance matrix CSV row mismatch at " +
                                  ids[i]);
        for (std::size_t j = 0; j < n; ++j)
            raw[i * n + j] = parse_double(row[j + 1]);
    }
    DistanceMatrix matrix(ids);
    for (std::size_t i = 0; i < n; ++i) {
        if (raw[i * n + i] != 0.0)
            throw ValidationError("distance matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (raw[i * n + j] != raw[j * n + i])
                throw ValidationError("distance matrix must be symmetric");
            matrix.set(i, j, raw[i * n + j]);
        }
    }
    return matrix;
}

std::string embedding_to_csv(const Embedding& embedding,
                             std::string_view manifest_hash) {
    std::ostringstream out;
    if (!manifest_hash.empty()) out << "# manifest: " << manifest_hash << "\n";
    out << "id";
    if (embedding.dim == 2) {
        out << ",x,y";
    } else {
        for (int c = 0; c < embedding.dim; ++c) out << ",x" << c;
    }
    out << '\n';
    for (std::size_t i = 0; i < embedding.ids.size(); ++i) {
        out << embedding.ids[i];
        for (int c = 0; c < embedding.dim; ++c)
            out << ',' << format_double(embedding.at(i, c));
        out << '\n';
    }
    return std::move(out).str();
}

Embedding embedding_from_csv(std::string_view text) {
    auto lines = csv_lines(text);
    if (lines.size() < 2) throw ValidationError("empty embedding CSV");
    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "id")
        throw ValidationError("embedding CSV must start with an id header");

    Embedding emb;
    emb.dim = static_cast<int>(header.size()) - 1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto row = split_csv_line(lines[i]);
        if (row.size() != header.size())
            throw ValidationError("embedding CSV column count mismatch");
        emb.ids.push_back(row[0]);
        for (int c = 0; c < emb.dim; ++c)
            emb.coords.push_back(parse_double(row[c + 1]));
    }
    return emb;
}

}  // namespace critsamp
