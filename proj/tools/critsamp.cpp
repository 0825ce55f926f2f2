// critsamp: critical-point sampling and persistence-based classification
// of gridded scalar fields. Subcommands: gen-corpus, sample, diagram,
// distmat, mds, classify, pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "critsamp/errors.hpp"
#include "critsamp/field.hpp"
#include "critsamp/filtration.hpp"
#include "critsamp/homology.hpp"
#include "critsamp/io.hpp"
#include "critsamp/landmarks.hpp"
#include "critsamp/metrics.hpp"
#include "critsamp/morse.hpp"
#include "critsamp/parallel.hpp"
#include "critsamp/pipeline.hpp"
#include "critsamp/sampling.hpp"
#include "critsamp/synth.hpp"
#include "critsamp/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace critsamp;

namespace {

// Exit codes: 0 success, 2 usage, 3 I/O, 4 data validity.
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- option plumbing ----------------------------------------------------

struct PipelineOptions {
    PipelineConfig cfg;
    std::string sampler = "ms";
    std::string complex = "rips";
    std::string fps_budget = "auto";
    std::string cap = "auto";
    std::string knn_k = "1,2,3,4,8";
    std::string resize = "off";  // "off" or "<W>x<H>", applied at load
    int resize_w = 0, resize_h = 0;
    int threads = 0;  // 0 = CRITSAMP_THREADS env or hardware default
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad integer list entry: " + tok);
        }
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

void resolve_options(PipelineOptions& opt) {
    if (opt.sampler == "ms")
        opt.cfg.sampler = SamplerKind::Ms;
    else if (opt.sampler == "fps")
        opt.cfg.sampler = SamplerKind::Fps;
    else
        throw UsageError("sampler must be ms or fps");

    if (opt.complex == "rips")
        opt.cfg.complex = ComplexKind::Rips;
    else if (opt.complex == "witness")
        opt.cfg.complex = ComplexKind::Witness;
    else
        throw UsageError("complex must be rips or witness");

    if (opt.fps_budget == "auto") {
        opt.cfg.fps_budget = 0;
    } else {
        try {
            opt.cfg.fps_budget = std::stoi(opt.fps_budget);
        } catch (const std::exception&) {
            throw UsageError("fps budget must be 'auto' or an integer");
        }
        if (opt.cfg.fps_budget < 1)
            throw UsageError("fps budget must be >= 1");
    }

    if (opt.cap == "auto") {
        opt.cfg.cap = 0.0;
    } else {
        try {
            opt.cfg.cap = std::stod(opt.cap);
        } catch (const std::exception&) {
            throw UsageError("cap must be 'auto' or a number");
        }
        if (opt.cfg.cap <= 0.0) throw UsageError("cap must be positive");
    }

    if (opt.resize == "off") {
        opt.resize_w = opt.resize_h = 0;
    } else {
        auto x = opt.resize.find('x');
        bool ok = x != std::string::npos;
        if (ok) {
            try {
                opt.resize_w = std::stoi(opt.resize.substr(0, x));
                opt.resize_h = std::stoi(opt.resize.substr(x + 1));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok || opt.resize_w < 1 || opt.resize_h < 1)
            throw UsageError("resize must be 'off' or '<width>x<height>'");
    }

    opt.cfg.knn_k = parse_int_list(opt.knn_k);
    try {
        opt.cfg.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
}

// Flat key=value config file, '#' comments. Flag values win over file
// values, so the file is applied before CLI11 parses the flags.
void apply_config_file(PipelineOptions& opt, const std::string& path) {
    std::string text = read_file(path);
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) +
                             ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        auto as_double = [&](const char* what) {
            try {
                return std::stod(value);
            } catch (const std::exception&) {
                throw UsageError(std::string("config: bad ") + what + ": " + value);
            }
        };
        auto as_int = [&](const char* what) {
            try {
                return std::stoi(value);
            } catch (const std::exception&) {
                throw UsageError(std::string("config: bad ") + what + ": " + value);
            }
        };
        auto as_bool = [&](const char* what) {
            if (value == "true" || value == "1") return true;
            if (value == "false" || value == "0") return false;
            throw UsageError(std::string("config: bad ") + what + ": " + value);
        };

        if (key == "sampler") opt.sampler = value;
        else if (key == "r") opt.cfg.r = as_double("r");
        else if (key == "fps_budget") opt.fps_budget = value;
        else if (key == "complex") opt.complex = value;
        else if (key == "nu") opt.cfg.nu = as_int("nu");
        else if (key == "cap") opt.cap = value;
        else if (key == "max_dim") opt.cfg.max_dim = as_int("max_dim");
        else if (key == "q") opt.cfg.q = as_double("q");
        else if (key == "lift_scale") opt.cfg.lift_scale = as_double("lift_scale");
        else if (key == "exclusion_threshold")
            opt.cfg.exclusion_threshold = as_double("exclusion_threshold");
        else if (key == "include_saddles")
            opt.cfg.include_saddles = as_bool("include_saddles");
        else if (key == "include_essential")
            opt.cfg.include_essential = as_bool("include_essential");
        else if (key == "knn_k") opt.knn_k = value;
        else if (key == "split_fraction")
            opt.cfg.split_fraction = as_double("split_fraction");
        else if (key == "split_seed")
            opt.cfg.split_seed = static_cast<std::uint64_t>(as_double("split_seed"));
        else if (key == "mds_dim") opt.cfg.mds_dim = as_int("mds_dim");
        else if (key == "resize") opt.resize = value;
        else if (key == "threads") opt.threads = as_int("threads");
        else throw UsageError("config: unknown key: " + key);
    }
}

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& opt) {
    cmd->add_option("--sampler", opt.sampler, "Sampler: ms|fps");
    cmd->add_option("--r", opt.cfg.r, "MS persistence level in [0,1]");
    cmd->add_option("--fps-budget", opt.fps_budget,
                    "FPS point budget: auto|<int>");
    cmd->add_option("--complex", opt.complex, "Complex: rips|witness");
    cmd->add_option("--nu", opt.cfg.nu, "Witness relaxation (0..2)");
    cmd->add_option("--cap", opt.cap, "Filtration cap: auto|<value>");
    cmd->add_option("--max-dim", opt.cfg.max_dim, "Top simplex dimension (1..3)");
    cmd->add_option("--q", opt.cfg.q, "Wasserstein parameter (>=1)");
    cmd->add_option("--lift", opt.cfg.lift_scale, "Function lift scale");
    cmd->add_option("--threshold", opt.cfg.exclusion_threshold,
                    "Pixel exclusion threshold in (0,1]");
    cmd->add_option("--include-saddles", opt.cfg.include_saddles,
                    "Keep saddle points in MS samples");
    cmd->add_option("--include-essential", opt.cfg.include_essential,
                    "Keep essential-class points in MS samples");
    cmd->add_option("--knn-k", opt.knn_k, "kNN k values, comma separated");
    cmd->add_option("--split-fraction", opt.cfg.split_fraction,
                    "Train fraction in (0,1)");
    cmd->add_option("--split-seed", opt.cfg.split_seed, "Split shuffle seed");
    cmd->add_option("--mds-dim", opt.cfg.mds_dim, "MDS embedding dimension");
    cmd->add_option("--resize", opt.resize,
                    "Resize inputs at load: off|<width>x<height> (bilinear)");
    cmd->add_option("--threads", opt.threads,
                    "Worker threads (0 = CRITSAMP_THREADS env or all cores)");
}

json config_json(const PipelineOptions& opt) {
    const PipelineConfig& cfg = opt.cfg;
    json j;
    j["sampler"] = cfg.sampler == SamplerKind::Ms ? "ms" : "fps";
    j["r"] = cfg.r;
    if (cfg.fps_budget == 0)
        j["fps_budget"] = "auto";
    else
        j["fps_budget"] = cfg.fps_budget;
    j["complex"] = cfg.complex == ComplexKind::Rips ? "rips" : "witness";
    j["nu"] = cfg.nu;
    if (cfg.cap <= 0.0)
        j["cap"] = "auto";
    else
        j["cap"] = cfg.cap;
    j["max_dim"] = cfg.max_dim;
    j["q"] = cfg.q;
    j["lift_scale"] = cfg.lift_scale;
    j["exclusion_threshold"] = cfg.exclusion_threshold;
    j["include_saddles"] = cfg.include_saddles;
    j["include_essential"] = cfg.include_essential;
    j["knn_k"] = cfg.knn_k;
    j["split_fraction"] = cfg.split_fraction;
    j["split_seed"] = cfg.split_seed;
    j["mds_dim"] = cfg.mds_dim;
    j["resize"] = opt.resize_w > 0 ? std::to_string(opt.resize_w) + "x" +
                                         std::to_string(opt.resize_h)
                                   : "off";
    return j;
}

// --- corpus loading -----------------------------------------------------

struct LoadedCorpus {
    LabeledCorpus corpus;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, hash
};

LoadedCorpus load_corpus(const std::string& root, int resize_w = 0,
                         int resize_h = 0) {
    if (!fs::is_directory(root))
        throw IoError("corpus directory not found: " + root);

    std::vector<std::string> labels;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory())
            labels.push_back(entry.path().filename().string());
    std::sort(labels.begin(), labels.end());

    LoadedCorpus out;
    for (const auto& label : labels) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(fs::path(root) / label))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            std::string bytes = read_file(path);
            std::string id = label + "/" + path.stem().string();
            try {
                ScalarField field = load_pgm(bytes);
                if (resize_w > 0)
                    field = resize(field, resize_w, resize_h,
                                   ResizeMode::Bilinear);
                out.corpus.items.push_back({id, std::move(field), label});
            } catch (const PgmParseError& e) {
                throw PgmParseError(e.kind(),
                                    path.string() + ": " + e.what());
            }
            out.inputs.emplace_back(path.string(), fnv1a64_hex(bytes));
        }
    }
    if (out.corpus.items.empty())
        throw ValidationError("empty corpus: no <label>/<item>.pgm files under " +
                              root);
    return out;
}

std::string run_hash(const PipelineOptions& opt, const LoadedCorpus& loaded) {
    std::ostringstream acc;
    acc << config_json(opt).dump() << '\n';
    for (const auto& [path, hash] : loaded.inputs)
        acc << fs::path(path).filename().string() << ':' << hash << '\n';
    return fnv1a64_hex(acc.str());
}

std::string label_of_id(const std::string& id) {
    auto slash = id.find('/');
    if (slash == std::string::npos || slash == 0)
        throw ValidationError("id does not encode a label: " + id);
    return id.substr(0, slash);
}

// --- point-list input for `diagram` -------------------------------------

PointCloud load_point_list(const std::string& path) {
    std::string text = read_file(path);
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        for (char& c : line)
            if (c == ',') c = ' ';
        std::stringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        std::vector<double> row;
        try {
            row.push_back(std::stod(first));
            double v;
            while (ls >> v) row.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError(path + ": bad point row: " + line);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError(path + ": no points");
    return PointCloud::from_rows(rows);
}

bool is_pgm_path(const std::string& path) {
    return fs::path(path).extension() == ".pgm";
}

// --- subcommands ----------------------------------------------------------

struct GenCorpusArgs {
    std::string out_dir;
    int per_class = 20;
    std::uint64_t seed = 1;
    int width = 64, height = 64;
    double noise = 0.05;
};

int cmd_gen_corpus(const GenCorpusArgs& args) {
    SynthParams params{args.width, args.height, args.noise};
    LabeledCorpus corpus =
        synth_disk_annulus_corpus(args.per_class, args.seed, params);
    for (const auto& item : corpus.items) {
        fs::path path = fs::path(args.out_dir) / (item.id + ".pgm");
        fs::create_directories(path.parent_path());
        write_file_atomic(path, write_pgm(item.field));
    }
    std::printf("wrote %zu images under %s\n", corpus.items.size(),
                args.out_dir.c_str());
    return 0;
}

struct SampleArgs {
    std::string input;
    std::string sampler = "ms";
    double r = 0.3;
    int m = 0;
    int seed_index = 0;
    double threshold = 1.0;
    double lift = 0.0;
    std::string out;
    std::string plot;
};

int cmd_sample(const SampleArgs& args) {
    ScalarField field = load_pgm_file(args.input);
    std::string csv;
    json plot_points = json::array();

    if (args.sampler == "ms") {
        CriticalSet critical = ms_sample(field, args.r);
        csv = critical_set_to_csv(critical);
        auto emit = [&](const std::vector<GridPoint>& pts, const char* type) {
            for (auto p : pts)
                plot_points.push_back({{"u", p.u}, {"v", p.v}, {"type", type}});
        };
        emit(critical.minima, "min");
        emit(critical.saddles, "saddle");
        emit(critical.maxima, "max");
    } else if (args.sampler == "fps") {
        if (args.m < 1) throw UsageError("fps sampling needs --m >= 1");
        GridPointCloud cloud = to_point_cloud(field, args.threshold, args.lift);
        std::vector<int> chosen =
            fps(cloud.metric_points(), SampleBudget{args.m, args.seed_index});
        std::ostringstream rows;
        rows << "u,v,type\n";
        for (int i : chosen) {
            GridPoint p = cloud.points[static_cast<std::size_t>(i)];
            rows << p.u << ',' << p.v << ",fps\n";
            plot_points.push_back({{"u", p.u}, {"v", p.v}, {"type", "fps"}});
        }
        csv = std::move(rows).str();
    } else {
        throw UsageError("sampler must be ms or fps");
    }

    write_file_atomic(args.out, csv);
    json plot{{"width", field.width()},
              {"height", field.height()},
              {"points", plot_points}};
    std::string plot_path = args.plot;
    if (plot_path.empty())
        plot_path = fs::path(args.out).replace_extension(".plot.json").string();
    write_file_atomic(plot_path, plot.dump(2) + "\n");
    return 0;
}

struct DiagramArgs {
    std::string input;
    std::string complex = "rips";
    int nu = 1;
    std::string cap = "auto";
    int max_dim = 3;
    double threshold = 1.0;
    double lift = 0.0;
    std::string landmark_strategy = "all";
    double landmark_r = 0.3;
    int landmark_m = 8;
    std::string out;
};

int cmd_diagram(const DiagramArgs& args) {
    if (args.max_dim < 1 || args.max_dim > 3)
        throw UsageError("max dimension must be 1, 2 or 3");
    if (args.complex != "rips" && args.complex != "witness")
        throw UsageError("complex must be rips or witness");

    double cap = 0.0;
    if (args.cap != "auto") {
        try {
            cap = std::stod(args.cap);
        } catch (const std::exception&) {
            throw UsageError("cap must be 'auto' or a number");
        }
        if (cap <= 0.0) throw UsageError("cap must be positive");
    }
    auto auto_cap = [&](const PointCloud& pts) {
        if (cap > 0.0) return cap;
        double d = pts.diameter();
        return d > 0.0 ? d : std::numeric_limits<double>::min();
    };

    Filtration filt;
    if (args.complex == "rips") {
        PointCloud cloud =
            is_pgm_path(args.input)
                ? to_point_cloud(load_pgm_file(args.input), args.threshold,
                                 args.lift)
                      .metric_points()
                : load_point_list(args.input);
        filt = rips_filtration(cloud, args.max_dim, auto_cap(cloud));
    } else {
        LandmarkSet landmarks;
        PointCloud cloud;
        if (is_pgm_path(args.input)) {
            ScalarField field = load_pgm_file(args.input);
            GridPointCloud grid_cloud =
                to_point_cloud(field, args.threshold, args.lift);
            LandmarkParams params;
            if (args.landmark_strategy == "ms") {
                params.strategy = LandmarkStrategy::MsCritical;
                params.field = &field;
                params.r = args.landmark_r;
            } else if (args.landmark_strategy == "fps") {
                params.strategy = LandmarkStrategy::Fps;
                params.fps_count = args.landmark_m;
            } else if (args.landmark_strategy == "all") {
                params.strategy = LandmarkStrategy::All;
            } else {
                throw UsageError("landmark strategy must be ms, fps or all");
            }
            landmarks = select_landmarks(grid_cloud, params);
            cloud = grid_cloud.metric_points();
        } else {
            cloud = load_point_list(args.input);
            const int n = static_cast<int>(cloud.size());
            if (args.landmark_strategy == "all") {
                for (int i = 0; i < n; ++i)
                    landmarks.landmark_indices.push_back(i);
            } else if (args.landmark_strategy == "fps") {
                landmarks.landmark_indices =
                    fps(cloud, SampleBudget{std::min(args.landmark_m, n), 0});
                std::vector<char> is_lm(n, 0);
                for (int i : landmarks.landmark_indices) is_lm[i] = 1;
                for (int i = 0; i < n; ++i)
                    if (!is_lm[i]) landmarks.witness_indices.push_back(i);
            } else {
                throw UsageError(
                    "point-list input supports landmark strategies fps and all");
            }
        }
        PointCloud landmark_points = cloud.subset(landmarks.landmark_indices);
        filt = lazy_witness_filtration(cloud, landmarks, args.nu, args.max_dim,
                                       auto_cap(landmark_points));
    }

    std::string out = diagrams_to_json(compute_persistence(filt, 2));
    if (args.out.empty())
        std::fputs(out.c_str(), stdout);
    else
        write_file_atomic(args.out, out);
    return 0;
}

struct DistmatArgs {
    std::string corpus;
    std::string out;
    std::string manifest;
};

json manifest_json(const PipelineOptions& opt, const LoadedCorpus& loaded,
                   const std::string& hash, const PipelineResult& result,
                   const std::map<std::string, double>& timings) {
    json inputs = json::array();
    for (const auto& [path, in_hash] : loaded.inputs)
        inputs.push_back({{"path", path}, {"hash", in_hash}});
    json sizes;
    for (std::size_t i = 0; i < loaded.corpus.items.size(); ++i)
        sizes[loaded.corpus.items[i].id] = result.sample_sizes[i];
    json sampling{{"sample_sizes", sizes},
                  {"ms_mean_size", result.ms_mean_size}};
    if (opt.cfg.sampler == SamplerKind::Fps)
        sampling["fps_budget"] = result.fps_budget_used;
    json j{{"tool", std::string("critsamp ") + kVersion},
           {"run_hash", hash},
           {"config", config_json(opt)},
           {"inputs", inputs},
           {"sampling", sampling}};
    json t;
    for (const auto& [stage, ms] : timings) t[stage] = ms;
    j["timings_ms"] = t;
    return j;
}

class StageTimer {
public:
    void start() { t0_ = std::chrono::steady_clock::now(); }
    void stop(const std::string& stage) {
        auto t1 = std::chrono::steady_clock::now();
        timings_[stage] =
            std::chrono::duration<double, std::milli>(t1 - t0_).count();
        t0_ = t1;
    }
    const std::map<std::string, double>& timings() const { return timings_; }

private:
    std::chrono::steady_clock::time_point t0_;
    std::map<std::string, double> timings_;
};

int cmd_distmat(const DistmatArgs& args, PipelineOptions& opt) {
    resolve_options(opt);
    StageTimer timer;
    timer.start();
    LoadedCorpus loaded = load_corpus(args.corpus, opt.resize_w, opt.resize_h);
    timer.stop("load");
    std::string hash = run_hash(opt, loaded);
    PipelineResult result = run_algorithm1(loaded.corpus, opt.cfg, opt.threads);
    timer.stop("algorithm1");
    write_file_atomic(args.out, distance_matrix_to_csv(result.matrix, hash));
    if (!args.manifest.empty())
        write_file_atomic(
            args.manifest,
            manifest_json(opt, loaded, hash, result, timer.timings()).dump(2) +
                "\n");
    return 0;
}

struct MdsArgs {
    std::string matrix;
    int dim = 2;
    std::string out;
};

std::string manifest_hash_of_csv(const std::string& text) {
    const std::string prefix = "# manifest: ";
    if (text.rfind(prefix, 0) == 0) {
        auto end = text.find('\n');
        return text.substr(prefix.size(), end - prefix.size());
    }
    return {};
}

int cmd_mds(const MdsArgs& args) {
    std::string text = read_file(args.matrix);
    DistanceMatrix matrix = distance_matrix_from_csv(text);
    Embedding embedding = classical_mds(matrix, args.dim);
    write_file_atomic(args.out,
                      embedding_to_csv(embedding, manifest_hash_of_csv(text)));
    return 0;
}

struct ClassifyArgs {
    std::string matrix;
    std::string embedding;
    std::string knn_k = "1,2,3,4,8";
    double split_fraction = 0.7;
    std::uint64_t split_seed = 0;
    std::string out;
};

json results_json(const DistanceMatrix& matrix, const Embedding* embedding,
                  const std::vector<int>& knn_k, double split_fraction,
                  std::uint64_t split_seed, json* split_out) {
    std::vector<std::string> ids = matrix.ids();
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (const auto& id : ids) labels.push_back(label_of_id(id));

    TrainTestSplit split =
        split_train_test(ids, labels, split_fraction, split_seed);

    std::map<std::string, std::string> label_of;
    for (std::size_t i = 0; i < ids.size(); ++i) label_of[ids[i]] = labels[i];
    std::vector<std::string> train_labels, actual;
    for (const auto& id : split.train_ids)
        train_labels.push_back(label_of[id]);
    for (const auto& id : split.test_ids) actual.push_back(label_of[id]);

    auto report_json = [&](const std::vector<std::string>& predicted) {
        EvalReport report = evaluate_accuracy(predicted, actual);
        json confusion;
        for (const auto& [truth, row] : report.confusion) {
            json r;
            for (const auto& [pred, count] : row) r[pred] = count;
            confusion[truth] = r;
        }
        return json{{"accuracy", report.accuracy}, {"confusion", confusion}};
    };

    json results;
    for (int k : knn_k) {
        if (k > static_cast<int>(split.train_ids.size()))
            throw ValidationError("k exceeds train size: " + std::to_string(k));
        auto predicted = knn_classify(matrix, split.train_ids, train_labels,
                                      split.test_ids, k);
        results["knn_" + std::to_string(k)] = report_json(predicted);
    }
    if (embedding) {
        auto predicted = nearest_centroid_classify(
            *embedding, split.train_ids, train_labels, split.test_ids);
        results["nearest_centroid"] = report_json(predicted);
    }
    if (split_out)
        *split_out = json{{"fraction", split_fraction},
                          {"seed", split_seed},
                          {"train", split.train_ids},
                          {"test", split.test_ids}};
    return results;
}

int cmd_classify(const ClassifyArgs& args) {
    std::string text = read_file(args.matrix);
    DistanceMatrix matrix = distance_matrix_from_csv(text);
    Embedding embedding;
    bool have_embedding = !args.embedding.empty();
    if (have_embedding)
        embedding = embedding_from_csv(read_file(args.embedding));

    json split;
    json results = results_json(matrix, have_embedding ? &embedding : nullptr,
                                parse_int_list(args.knn_k),
                                args.split_fraction, args.split_seed, &split);
    json report{{"manifest", manifest_hash_of_csv(text)},
                {"split", split},
                {"results", results}};
    write_file_atomic(args.out, report.dump(2) + "\n");
    return 0;
}

struct PipelineArgs {
    std::string corpus;
    std::string out_dir;
};

int cmd_pipeline(const PipelineArgs& args, PipelineOptions& opt) {
    resolve_options(opt);
    StageTimer timer;
    timer.start();
    LoadedCorpus loaded = load_corpus(args.corpus, opt.resize_w, opt.resize_h);
    {
        std::map<std::string, int> label_counts;
        for (const auto& item : loaded.corpus.items)
            ++label_counts[item.label];
        if (label_counts.size() < 2)
            throw ValidationError("pipeline needs at least 2 labels");
    }
    timer.stop("load");

    std::string hash = run_hash(opt, loaded);
    PipelineResult result = run_algorithm1(loaded.corpus, opt.cfg, opt.threads);
    timer.stop("algorithm1");

    Embedding embedding = classical_mds(result.matrix, opt.cfg.mds_dim);
    timer.stop("mds");

    json split;
    json results = results_json(result.matrix, &embedding, opt.cfg.knn_k,
                                opt.cfg.split_fraction, opt.cfg.split_seed,
                                &split);
    timer.stop("classify");

    json sampling{{"ms_mean_size", result.ms_mean_size}};
    if (opt.cfg.sampler == SamplerKind::Fps)
        sampling["fps_budget"] = result.fps_budget_used;
    json report{{"manifest", hash},
                {"config", config_json(opt)},
                {"sampling", sampling},
                {"split", split},
                {"results", results}};

    fs::create_directories(args.out_dir);
    fs::path dir(args.out_dir);
    write_file_atomic(dir / "distance_matrix.csv",
                      distance_matrix_to_csv(result.matrix, hash));
    write_file_atomic(dir / "embedding.csv", embedding_to_csv(embedding, hash));
    write_file_atomic(dir / "report.json", report.dump(2) + "\n");
    write_file_atomic(
        dir / "manifest.json",
        manifest_json(opt, loaded, hash, result, timer.timings()).dump(2) +
            "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical-point sampling and persistence-based classification "
                 "of gridded scalar fields"};
    app.set_version_flag("--version", std::string("critsamp ") + kVersion);
    app.require_subcommand(1);

    GenCorpusArgs gen_args;
    auto* gen = app.add_subcommand(
        "gen-corpus", "Generate the synthetic disk/annulus PGM corpus");
    gen->add_option("--out", gen_args.out_dir, "Output directory")->required();
    gen->add_option("--per-class", gen_args.per_class, "Images per class");
    gen->add_option("--seed", gen_args.seed, "Generator seed");
    gen->add_option("--width", gen_args.width, "Image width");
    gen->add_option("--height", gen_args.height, "Image height");
    gen->add_option("--noise", gen_args.noise, "Gaussian noise sigma");

    SampleArgs sample_args;
    auto* sample = app.add_subcommand(
        "sample", "Sample an image: MS critical points or FPS");
    sample->add_option("input", sample_args.input, "Input PGM")->required();
    sample->add_option("--sampler", sample_args.sampler, "ms|fps");
    sample->add_option("--r", sample_args.r, "MS persistence level");
    sample->add_option("--m", sample_args.m, "FPS point count");
    sample->add_option("--seed-index", sample_args.seed_index, "FPS seed point");
    sample->add_option("--threshold", sample_args.threshold,
                       "Pixel exclusion threshold");
    sample->add_option("--lift", sample_args.lift, "Function lift scale");
    sample->add_option("--out", sample_args.out, "Points CSV path")->required();
    sample->add_option("--plot", sample_args.plot,
                       "Plot-data JSON path (default: derived from --out)");

    DiagramArgs diagram_args;
    auto* diagram = app.add_subcommand(
        "diagram", "Persistence diagrams of an image or point list");
    diagram->add_option("input", diagram_args.input, "PGM or point list (csv/txt)")
        ->required();
    diagram->add_option("--complex", diagram_args.complex, "rips|witness");
    diagram->add_option("--nu", diagram_args.nu, "Witness relaxation (0..2)");
    diagram->add_option("--cap", diagram_args.cap, "Filtration cap: auto|<value>");
    diagram->add_option("--max-dim", diagram_args.max_dim,
                        "Top simplex dimension (1..3)");
    diagram->add_option("--threshold", diagram_args.threshold,
                        "Pixel exclusion threshold");
    diagram->add_option("--lift", diagram_args.lift, "Function lift scale");
    diagram->add_option("--landmark-strategy", diagram_args.landmark_strategy,
                        "ms|fps|all (witness complex)");
    diagram->add_option("--landmark-r", diagram_args.landmark_r,
                        "MS landmark persistence level");
    diagram->add_option("--landmark-m", diagram_args.landmark_m,
                        "FPS landmark count");
    diagram->add_option("--out", diagram_args.out,
                        "Output JSON (default: stdout)");

    PipelineOptions distmat_opt;
    DistmatArgs distmat_args;
    auto* distmat = app.add_subcommand(
        "distmat", "Distance matrix of a labeled corpus (steps 1-2)");
    distmat->add_option("--corpus", distmat_args.corpus,
                        "Corpus root: <root>/<label>/<item>.pgm")
        ->required();
    distmat->add_option("--out", distmat_args.out, "Matrix CSV path")->required();
    distmat->add_option("--manifest", distmat_args.manifest,
                        "Manifest JSON path (optional)");
    std::string distmat_config;
    distmat->add_option("--config", distmat_config, "key=value config file");
    add_pipeline_flags(distmat, distmat_opt);

    MdsArgs mds_args;
    auto* mds = app.add_subcommand("mds", "Classical MDS of a distance matrix");
    mds->add_option("--matrix", mds_args.matrix, "Matrix CSV")->required();
    mds->add_option("--dim", mds_args.dim, "Embedding dimension");
    mds->add_option("--out", mds_args.out, "Embedding CSV path")->required();

    ClassifyArgs classify_args;
    auto* classify = app.add_subcommand(
        "classify", "Split and classify from a distance matrix");
    classify->add_option("--matrix", classify_args.matrix, "Matrix CSV")
        ->required();
    classify->add_option("--embedding", classify_args.embedding,
                         "Embedding CSV (enables nearest-centroid)");
    classify->add_option("--knn-k", classify_args.knn_k,
                         "kNN k values, comma separated");
    classify->add_option("--split-fraction", classify_args.split_fraction,
                         "Train fraction");
    classify->add_option("--split-seed", classify_args.split_seed,
                         "Split shuffle seed");
    classify->add_option("--out", classify_args.out, "Report JSON path")
        ->required();

    PipelineOptions pipeline_opt;
    PipelineArgs pipeline_args;
    auto* pipeline = app.add_subcommand(
        "pipeline", "Full run: sample, diagrams, matrix, MDS, classify");
    pipeline->add_option("--corpus", pipeline_args.corpus,
                         "Corpus root: <root>/<label>/<item>.pgm")
        ->required();
    pipeline->add_option("--out-dir", pipeline_args.out_dir,
                         "Artifact output directory")
        ->required();
    std::string pipeline_config;
    pipeline->add_option("--config", pipeline_config, "key=value config file");
    add_pipeline_flags(pipeline, pipeline_opt);

    // Config files seed the defaults, so they are applied before the
    // flag values land (flags then override).
    try {
        for (int i = 2; i + 1 < argc; ++i) {
            if (std::string(argv[i]) == "--config") {
                std::string sub = argv[1];
                if (sub == "pipeline")
                    apply_config_file(pipeline_opt, argv[i + 1]);
                else if (sub == "distmat")
                    apply_config_file(distmat_opt, argv[i + 1]);
            }
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen_corpus(gen_args);
        if (sample->parsed()) return cmd_sample(sample_args);
        if (diagram->parsed()) return cmd_diagram(diagram_args);
        if (distmat->parsed()) return cmd_distmat(distmat_args, distmat_opt);
        if (mds->parsed()) return cmd_mds(mds_args);
        if (classify->parsed()) return cmd_classify(classify_args);
        if (pipeline->parsed()) return cmd_pipeline(pipeline_args, pipeline_opt);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const PgmParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
