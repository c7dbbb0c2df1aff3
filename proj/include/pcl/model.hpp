#pragma once

// Desk-scale baseline classifier: logistic regression over a hashed
// bag-of-words concatenated with the 12 z-normalized text features and a
// bias, trained with binary cross-entropy against soft labels and early
// stopping on validation F1.

#include "pcl/ensemble.hpp"
#include "pcl/features.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcl::model {

enum class Target { SoftLabels, HardLabels };

std::optional<Target> parse_target(std::string_view name);
const char* to_string(Target target);

struct ModelConfig {
    std::uint32_t hash_dims = 1u << 18;
    double learning_rate = 0.1;
    bool linear_decay = true;  // lr scaled by (1 - (epoch-1)/epochs_max)
    int epochs_max = 100;
    int patience = 10;
    double l2 = 1e-6;
    std::size_t batch_size = 16;  // 0 = full batch
    std::uint64_t seed = 221;
    Target target = Target::SoftLabels;
};

void validate(const ModelConfig& config);

struct Sample {
    std::string id;
    std::string text;
    features::FeatureVector features;
    double soft_label = 0.0;  // training target; validation uses soft_label >= 0.5
};

// Convenience: fills features from the text.
Sample make_sample(std::string id, std::string text, double soft_label);

struct Normalizer {
    std::array<double, features::kFeatureCount> mean{};
    std::array<double, features::kFeatureCount> stddev{};

    // Statistics over the given samples; a zero spread becomes 1.
    static Normalizer fit(const std::vector<Sample>& samples);
    double apply(std::size_t k, double value) const { return (value - mean[k]) / stddev[k]; }
};

// (index, value) pairs with unique, ascending indices.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// Layout: [0, hash_dims) hashed token counts,
// then the 12 normalized features, then a constant 1 for the bias.
std::size_t weight_count(std::uint32_t hash_dims);
std::uint32_t hash_token(std::string_view token, std::uint32_t hash_dims);
SparseVector encode(std::string_view text, const features::FeatureVector& features, const Normalizer& normalizer,
                    std::uint32_t hash_dims);

double sigmoid(double z);
double dot(const std::vector<double>& weights, const SparseVector& x);

// Binary cross-entropy of sigmoid(w.x) against target y in [0, 1], computed
// from the logit for numerical stability.
double bce_loss(const std::vector<double>& weights, const SparseVector& x, double y);

// d bce / d w = (sigmoid(w.x) - y) * x, on the support of x.
SparseVector bce_gradient(const std::vector<double>& weights, const SparseVector& x, double y);

struct EpochLog {
    int epoch = 0;
    double learning_rate = 0.0;
    double train_loss = 0.0;
    double validation_f1 = 0.0;
};

struct TrainedModel {
    ModelConfig config;
    Normalizer normalizer;
    std::vector<double> weights;  // weight_count(hash_dims)
    int best_epoch = 0;           // 1-based
    double validation_f1 = 0.0;
    int epochs_run = 0;
    std::vector<EpochLog> history;
    std::string name = "linear";
};

TrainedModel train(const std::vector<Sample>& train_set, const std::vector<Sample>& validation_set,
                   const ModelConfig& config);

double predict(const TrainedModel& model, std::string_view text, const features::FeatureVector& features);
double predict(const TrainedModel& model, const Sample& sample);

// Text container, one block per model ("pcl-linear-model 1" ... "end").
// Weights are stored sparsely with round-trip precision.
void save_models(const std::filesystem::path& path, const std::vector<TrainedModel>& models);
std::vector<TrainedModel> load_models(const std::filesystem::path& path);

// One column per model (1 for binary, 7 for the per-category models).
ensemble::ScoreMatrix score_samples(const std::vector<TrainedModel>& models, const std::vector<Sample>& samples,
                                    std::string model_id);
void export_scores(const std::vector<TrainedModel>& models, const std::vector<Sample>& samples,
                   const std::filesystem::path& path, std::string model_id = "linear");

}  // namespace pcl::model
