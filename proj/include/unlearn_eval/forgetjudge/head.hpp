#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "unlearn_eval/backends/interfaces.hpp"
#include "unlearn_eval/core/config.hpp"
#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/hash.hpp"
#include "unlearn_eval/core/rng.hpp"
#include "unlearn_eval/core/types.hpp"
#include "unlearn_eval/metrics/confusion.hpp"

namespace unlearn_eval {

enum class JudgeLabel { Target, TargetFree };

inline std::string_view to_string(JudgeLabel label) {
    return label == JudgeLabel::Target ? "Target" : "TargetFree";
}

// Linear softmax head over a frozen backbone embedding. Class 1 = Target
// (content still present), class 0 = TargetFree.
struct ClassifierHead {
    std::string task_id;
    std::string backbone_id;
    std::size_t dim = 0;
    std::vector<double> weights;  // 2 x dim, row-major (row 0 TargetFree, row 1 Target)
    std::array<double, 2> bias{0.0, 0.0};
    std::string training_fingerprint;

    bool operator==(const ClassifierHead&) const = default;
};

struct Prediction {
    JudgeLabel label = JudgeLabel::TargetFree;
    double probability = 0.0;         // of the predicted label
    double target_probability = 0.0;  // softmax mass on Target
};

struct ForgettingScore {
    double presence_rate = 0.0;    // percent judged to still contain the target
    double forgetting_rate = 0.0;  // 100 - presence_rate
    std::size_t n = 0;
};

struct TrainStats {
    std::vector<double> train_losses;    // pre-update loss per epoch
    std::vector<double> holdout_losses;  // post-update holdout loss per epoch
    std::size_t epochs_run = 0;
    double holdout_accuracy = 0.0;  // percent, at the restored best epoch
};

// ---------------------------------------------------------------------------
// Loss/gradient kernels. Parameter layout: [w00..w0d-1, w10..w1d-1, b0, b1].
// Exposed separately so the finite-difference oracle can probe the same code
// path the trainer uses.
// ---------------------------------------------------------------------------

inline std::size_t head_param_count(std::size_t dim) { return 2 * dim + 2; }

inline std::array<double, 2> head_logits(const std::vector<double>& params, std::size_t dim,
                                         const std::vector<double>& x) {
    std::array<double, 2> z{params[2 * dim], params[2 * dim + 1]};
    for (std::size_t j = 0; j < dim; ++j) {
        z[0] += params[j] * x[j];
        z[1] += params[dim + j] * x[j];
    }
    return z;
}

inline std::array<double, 2> softmax2(const std::array<double, 2>& z) {
    const double m = std::max(z[0], z[1]);
    const double e0 = std::exp(z[0] - m);
    const double e1 = std::exp(z[1] - m);
    const double sum = e0 + e1;
    return {e0 / sum, e1 / sum};
}

// Mean cross-entropy over the batch.
inline double softmax_xent_loss(const std::vector<double>& params, std::size_t dim,
                                const std::vector<std::vector<double>>& features,
                                const std::vector<int>& labels) {
    double loss = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto p = softmax2(head_logits(params, dim, features[i]));
        const double py = labels[i] ? p[1] : p[0];
        loss -= std::log(std::max(py, 1e-300));
    }
    return loss / static_cast<double>(features.size());
}

inline std::vector<double> softmax_xent_gradient(const std::vector<double>& params,
                                                 std::size_t dim,
                                                 const std::vector<std::vector<double>>& features,
                                                 const std::vector<int>& labels) {
    std::vector<double> grad(head_param_count(dim), 0.0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto p = softmax2(head_logits(params, dim, features[i]));
        const std::array<double, 2> delta{p[0] - (labels[i] ? 0.0 : 1.0),
                                          p[1] - (labels[i] ? 1.0 : 0.0)};
        for (std::size_t j = 0; j < dim; ++j) {
            grad[j] += delta[0] * features[i][j];
            grad[dim + j] += delta[1] * features[i][j];
        }
        grad[2 * dim] += delta[0];
        grad[2 * dim + 1] += delta[1];
    }
    const double inv_n = 1.0 / static_cast<double>(features.size());
    for (double& g : grad) g *= inv_n;
    return grad;
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

// Full-batch gradient descent from zero init, early-stopped on a
// seed-deterministic stratified holdout slice; the best-holdout parameters
// are restored. Deterministic under a fixed seed.
inline ClassifierHead train_head(const FeatureSet& features, const std::vector<int>& labels,
                                 const EvaluationConfig& config, const std::string& task_id,
                                 const std::string& backbone_id,
                                 const std::string& data_provenance = "",
                                 TrainStats* stats_out = nullptr) {
    require(features.rows.size() == labels.size(), ErrorCode::PreconditionFailed,
            "train_head: feature/label counts differ");
    const std::size_t dim = features.dim;
    require(dim > 0, ErrorCode::PreconditionFailed, "train_head: zero feature dimension");
    for (std::size_t i = 0; i < features.rows.size(); ++i) {
        if (features.rows[i].size() != dim) {
            throw Error(ErrorCode::DimensionMismatch, i, "feature row has inconsistent dimension");
        }
    }

    std::vector<std::size_t> class_indices[2];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        require(labels[i] == 0 || labels[i] == 1, ErrorCode::PreconditionFailed,
                "train_head: labels must be binary");
        class_indices[labels[i]].push_back(i);
    }
    if (class_indices[0].size() < 2 || class_indices[1].size() < 2) {
        throw Error(ErrorCode::DegenerateLabels,
                    "train_head needs >= 2 examples per class (got " +
                        std::to_string(class_indices[0].size()) + " / " +
                        std::to_string(class_indices[1].size()) + ")");
    }

    // Stratified holdout split, shuffled deterministically per class.
    SplitRng rng(config.seed, "head-holdout:" + task_id);
    std::vector<std::size_t> train_idx, holdout_idx;
    for (auto& indices : class_indices) {
        for (std::size_t i = indices.size(); i > 1; --i) {
            std::swap(indices[i - 1], indices[rng.next_below(i)]);
        }
        std::size_t take = static_cast<std::size_t>(
            std::llround(config.head_holdout_fraction * static_cast<double>(indices.size())));
        take = std::clamp<std::size_t>(take, 1, indices.size() - 1);
        holdout_idx.insert(holdout_idx.end(), indices.begin(), indices.begin() + take);
        train_idx.insert(train_idx.end(), indices.begin() + take, indices.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(holdout_idx.begin(), holdout_idx.end());

    auto gather = [&](const std::vector<std::size_t>& idx, std::vector<std::vector<double>>& xs,
                      std::vector<int>& ys) {
        for (std::size_t i : idx) {
            xs.push_back(features.rows[i]);
            ys.push_back(labels[i]);
        }
    };
    std::vector<std::vector<double>> train_x, holdout_x;
    std::vector<int> train_y, holdout_y;
    gather(train_idx, train_x, train_y);
    gather(holdout_idx, holdout_x, holdout_y);

    std::vector<double> params(head_param_count(dim), 0.0);
    std::vector<double> best_params = params;
    double best_holdout = softmax_xent_loss(params, dim, holdout_x, holdout_y);
    int patience_left = config.head_patience;

    TrainStats stats;
    for (int epoch = 0; epoch < config.head_max_epochs; ++epoch) {
        const double train_loss = softmax_xent_loss(params, dim, train_x, train_y);
        if (!std::isfinite(train_loss)) {
            throw Error(ErrorCode::NonFiniteLoss, "training loss diverged at epoch " +
                                                      std::to_string(epoch));
        }
        stats.train_losses.push_back(train_loss);

        const std::vector<double> grad = softmax_xent_gradient(params, dim, train_x, train_y);
        for (std::size_t k = 0; k < params.size(); ++k) {
            params[k] -= config.head_learning_rate * grad[k];
        }
        ++stats.epochs_run;

        const double holdout_loss = softmax_xent_loss(params, dim, holdout_x, holdout_y);
        if (!std::isfinite(holdout_loss)) {
            throw Error(ErrorCode::NonFiniteLoss, "holdout loss diverged at epoch " +
                                                      std::to_string(epoch));
        }
        stats.holdout_losses.push_back(holdout_loss);
        if (holdout_loss < best_holdout) {
            best_holdout = holdout_loss;
            best_params = params;
            patience_left = config.head_patience;
        } else if (--patience_left <= 0) {
            break;
        }
    }

    ClassifierHead head;
    head.task_id = task_id;
    head.backbone_id = backbone_id;
    head.dim = dim;
    head.weights.assign(best_params.begin(), best_params.begin() + 2 * dim);
    head.bias = {best_params[2 * dim], best_params[2 * dim + 1]};

    std::size_t correct = 0;
    for (std::size_t i = 0; i < holdout_x.size(); ++i) {
        const auto p = softmax2(head_logits(best_params, dim, holdout_x[i]));
        const int predicted = p[1] > p[0] ? 1 : 0;
        correct += predicted == holdout_y[i] ? 1 : 0;
    }
    stats.holdout_accuracy =
        100.0 * static_cast<double>(correct) / static_cast<double>(holdout_x.size());

    // Fingerprint ties the head to its data, seed, and hyperparameters.
    std::ostringstream fp;
    fp << data_provenance << '|' << config.seed << '|' << config.head_learning_rate << '|'
       << config.head_max_epochs << '|' << config.head_patience << '|'
       << config.head_holdout_fraction << '|' << task_id << '|' << backbone_id << '|' << dim;
    std::uint64_t h = fnv1a64(fp.str());
    for (const auto& row : features.rows) {
        h = fnv1a64(row.data(), row.size() * sizeof(double), h);
    }
    h = fnv1a64(labels.data(), labels.size() * sizeof(int), h);
    head.training_fingerprint = hex64(h);

    if (stats_out) *stats_out = std::move(stats);
    return head;
}

// ---------------------------------------------------------------------------
// Inference and evaluation
// ---------------------------------------------------------------------------

inline std::vector<Prediction> predict(const ClassifierHead& head, const FeatureSet& features) {
    std::vector<double> params(head.weights);
    params.push_back(head.bias[0]);
    params.push_back(head.bias[1]);
    std::vector<Prediction> out;
    out.reserve(features.rows.size());
    for (std::size_t i = 0; i < features.rows.size(); ++i) {
        if (features.rows[i].size() != head.dim) {
            throw Error(ErrorCode::DimensionMismatch, i,
                        "feature dim does not match head dim " + std::to_string(head.dim));
        }
        const auto z = head_logits(params, head.dim, features.rows[i]);
        const auto p = softmax2(z);
        Prediction pred;
        pred.target_probability = p[1];
        // Exact logit ties resolve to TargetFree.
        pred.label = z[1] > z[0] ? JudgeLabel::Target : JudgeLabel::TargetFree;
        pred.probability = pred.label == JudgeLabel::Target ? p[1] : p[0];
        out.push_back(pred);
    }
    return out;
}

// Per-source confusion counts over a labeled test slice. Empty source tags
// collapse into one "ALL" row.
inline std::map<std::string, ConfusionCounts> evaluate_head(
    const ClassifierHead& head, const FeatureSet& test_features,
    const std::vector<int>& test_labels, const std::vector<std::string>& sources = {}) {
    require(test_features.rows.size() == test_labels.size(), ErrorCode::PreconditionFailed,
            "evaluate_head: feature/label counts differ");
    require(sources.empty() || sources.size() == test_labels.size(),
            ErrorCode::PreconditionFailed, "evaluate_head: source tags misaligned");
    const std::vector<Prediction> predictions = predict(head, test_features);
    std::map<std::string, ConfusionCounts> by_source;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const std::string source = sources.empty() ? "ALL" : sources[i];
        by_source[source].add(test_labels[i] == 1,
                              predictions[i].label == JudgeLabel::Target);
    }
    return by_source;
}

// Forgetting for a set of unlearned-model generations under the target
// prompt: the complement of the judged target-presence rate.
inline ForgettingScore forgetting_score(const ClassifierHead& head, const ImageSet& images,
                                        ImageEmbedder& backbone) {
    require(!images.empty(), ErrorCode::PreconditionFailed, "forgetting_score: empty image set");
    require(images.provenance.variant == PromptVariant::Target, ErrorCode::PreconditionFailed,
            "forgetting_score expects images generated under the target prompt variant");
    const std::vector<Embedding> embeddings = backbone.embed_images(images);
    FeatureSet features;
    features.dim = backbone.embedding_dim();
    features.rows = embeddings;
    const std::vector<Prediction> predictions = predict(head, features);
    std::size_t present = 0;
    for (const Prediction& p : predictions) present += p.label == JudgeLabel::Target ? 1 : 0;
    ForgettingScore score;
    score.n = predictions.size();
    score.presence_rate = 100.0 * static_cast<double>(present) / static_cast<double>(score.n);
    score.forgetting_rate = 100.0 - score.presence_rate;
    return score;
}

// ---------------------------------------------------------------------------
// Registry: one binary weight file + plain-text metadata per head.
// ---------------------------------------------------------------------------

inline void save_head(const ClassifierHead& head, const std::filesystem::path& registry_dir) {
    namespace fs = std::filesystem;
    const fs::path dir = registry_dir / head.task_id;
    fs::create_directories(dir);

    std::ofstream meta(dir / "head.meta", std::ios::binary);
    if (!meta) throw Error(ErrorCode::IoError, "cannot write " + (dir / "head.meta").string());
    meta << "#head-schema=1\n"
         << "task_id = " << head.task_id << "\n"
         << "backbone_id = " << head.backbone_id << "\n"
         << "dim = " << head.dim << "\n"
         << "fingerprint = " << head.training_fingerprint << "\n";

    std::ofstream bin(dir / "weights.bin", std::ios::binary);
    if (!bin) throw Error(ErrorCode::IoError, "cannot write " + (dir / "weights.bin").string());
    bin.write(reinterpret_cast<const char*>(head.weights.data()),
              static_cast<std::streamsize>(head.weights.size() * sizeof(double)));
    bin.write(reinterpret_cast<const char*>(head.bias.data()),
              static_cast<std::streamsize>(head.bias.size() * sizeof(double)));
}

inline ClassifierHead load_head(const std::filesystem::path& registry_dir,
                                const std::string& task_id) {
    namespace fs = std::filesystem;
    const fs::path dir = registry_dir / task_id;
    std::ifstream meta(dir / "head.meta", std::ios::binary);
    if (!meta) {
        throw Error(ErrorCode::MissingHead, "no head registered for task '" + task_id + "' under " +
                                                registry_dir.string());
    }
    ClassifierHead head;
    std::string line;
    bool saw_schema = false;
    while (std::getline(meta, line)) {
        if (line == "#head-schema=1") {
            saw_schema = true;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "task_id") head.task_id = value;
        else if (key == "backbone_id") head.backbone_id = value;
        else if (key == "dim") head.dim = std::stoul(value);
        else if (key == "fingerprint") head.training_fingerprint = value;
    }
    require(saw_schema, ErrorCode::ParseError, "missing #head-schema=1 in " + dir.string());
    require(head.dim > 0, ErrorCode::ParseError, "head metadata missing dim");

    std::ifstream bin(dir / "weights.bin", std::ios::binary);
    if (!bin) throw Error(ErrorCode::IoError, "cannot read " + (dir / "weights.bin").string());
    head.weights.resize(2 * head.dim);
    bin.read(reinterpret_cast<char*>(head.weights.data()),
             static_cast<std::streamsize>(head.weights.size() * sizeof(double)));
    bin.read(reinterpret_cast<char*>(head.bias.data()),
             static_cast<std::streamsize>(head.bias.size() * sizeof(double)));
    if (!bin || bin.gcount() != static_cast<std::streamsize>(head.bias.size() * sizeof(double))) {
        throw Error(ErrorCode::ParseError, "weight file truncated for task '" + task_id + "'");
    }
    return head;
}

class HeadRegistry {
public:
    HeadRegistry() = default;

    static HeadRegistry load_dir(const std::filesystem::path& dir) {
        namespace fs = std::filesystem;
        HeadRegistry registry;
        registry.dir_ = dir;
        if (fs::exists(dir)) {
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (entry.is_directory() && fs::exists(entry.path() / "head.meta")) {
                    ClassifierHead head = load_head(dir, entry.path().filename().string());
                    registry.add(std::move(head));
                }
            }
        }
        return registry;
    }

    void add(ClassifierHead head) {
        require(!heads_.count(head.task_id), ErrorCode::PreconditionFailed,
                "duplicate head for task '" + head.task_id + "'");
        heads_.emplace(head.task_id, std::move(head));
    }

    const ClassifierHead& find(const std::string& task_id) const {
        auto it = heads_.find(task_id);
        if (it == heads_.end()) {
            throw Error(ErrorCode::MissingHead, "no head registered for task '" + task_id + "'");
        }
        return it->second;
    }

    bool contains(const std::string& task_id) const { return heads_.count(task_id) > 0; }
    std::size_t size() const { return heads_.size(); }

private:
    std::filesystem::path dir_;
    std::map<std::string, ClassifierHead> heads_;
};

}  // namespace unlearn_eval
