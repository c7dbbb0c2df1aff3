#include "pcl/model.hpp"

#include "pcl/error.hpp"
#include "pcl/metrics.hpp"
#include "pcl/random.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace pcl::model {

std::optional<Target> parse_target(std::string_view name) {
    if (name == "soft-labels" || name == "soft") return Target::SoftLabels;
    if (name == "hard-labels" || name == "hard") return Target::HardLabels;
    return std::nullopt;
}

const char* to_string(Target target) { return target == Target::SoftLabels ? "soft-labels" : "hard-labels"; }

void validate(const ModelConfig& config) {
    if (config.hash_dims < 1) throw ValidationError("hash_dims must be at least 1");
    if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
        throw ValidationError("learning_rate must be positive");
    }
    if (config.patience < 1) throw ValidationError("patience must be at least 1");
    if (config.epochs_max < 1) throw ValidationError("epochs_max must be at least 1");
    if (!(config.l2 >= 0.0)) throw ValidationError("l2 must be non-negative");
}

Sample make_sample(std::string id, std::string text, double soft_label) {
    Sample s;
    s.id = std::move(id);
    s.features = features::extract_features(text);
    s.text = std::move(text);
    s.soft_label = soft_label;
    return s;
}

Normalizer Normalizer::fit(const std::vector<Sample>& samples) {
    Normalizer n;
    n.stddev.fill(1.0);
    if (samples.empty()) return n;
    const double count = static_cast<double>(samples.size());
    for (std::size_t k = 0; k < features::kFeatureCount; ++k) {
        double sum = 0.0;
        for (const auto& s : samples) sum += s.features[k];
        const double mean = sum / count;
        double sq = 0.0;
        for (const auto& s : samples) sq += (s.features[k] - mean) * (s.features[k] - mean);
        const double sd = std::sqrt(sq / count);
        n.mean[k] = mean;
        n.stddev[k] = sd > 0.0 ? sd : 1.0;
    }
    return n;
}

std::size_t weight_count(std::uint32_t hash_dims) {
    return static_cast<std::size_t>(hash_dims) + features::kFeatureCount + 1;
}

std::uint32_t hash_token(std::string_view token, std::uint32_t hash_dims) {
    return static_cast<std::uint32_t>(io::fnv1a64(token) % hash_dims);
}

SparseVector encode(std::string_view text, const features::FeatureVector& feats, const Normalizer& normalizer,
                    std::uint32_t hash_dims) {
    std::map<std::uint32_t, double> counts;
    for (const auto& token : features::tokenize(text)) {
        if (token.kind != features::TokenKind::Word) continue;
        counts[hash_token(io::to_lower_ascii(token.text), hash_dims)] += 1.0;
    }
    SparseVector x;
    x.reserve(counts.size() + features::kFeatureCount + 1);
    for (const auto& [index, c] : counts) x.emplace_back(index, c);
    // The engineered block is scaled to unit expected norm so it does not set the step size.
    const double block_scale = 1.0 / std::sqrt(static_cast<double>(features::kFeatureCount));
    for (std::size_t k = 0; k < features::kFeatureCount; ++k) {
        x.emplace_back(static_cast<std::uint32_t>(hash_dims + k), block_scale * normalizer.apply(k, feats[k]));
    }
    x.emplace_back(static_cast<std::uint32_t>(hash_dims + features::kFeatureCount), 1.0);
    return x;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double dot(const std::vector<double>& weights, const SparseVector& x) {
    double z = 0.0;
    for (const auto& [index, value] : x) z += weights[index] * value;
    return z;
}

double bce_loss(const std::vector<double>& weights, const SparseVector& x, double y) {
    const double z = dot(weights, x);
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

SparseVector bce_gradient(const std::vector<double>& weights, const SparseVector& x, double y) {
    const double residual = sigmoid(dot(weights, x)) - y;
    SparseVector g;
    g.reserve(x.size());
    for (const auto& [index, value] : x) g.emplace_back(index, residual * value);
    return g;
}

namespace {

double target_of(const Sample& s, Target target) {
    if (target == Target::SoftLabels) return s.soft_label;
    return s.soft_label >= 0.5 ? 1.0 : 0.0;
}

double mean_loss(const std::vector<double>& weights, const std::vector<SparseVector>& xs,
                 const std::vector<double>& ys, double l2) {
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) total += bce_loss(weights, xs[i], ys[i]);
    double penalty = 0.0;
    if (l2 > 0.0) {
        const std::size_t bias = weights.size() - 1;
        for (std::size_t j = 0; j < bias; ++j) penalty += weights[j] * weights[j];
    }
    return total / static_cast<double>(xs.size()) + 0.5 * l2 * penalty;
}

double validation_f1(const std::vector<double>& weights, const std::vector<SparseVector>& xs,
                     const std::vector<bool>& gold) {
    std::vector<double> scores(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) scores[i] = sigmoid(dot(weights, xs[i]));
    return metrics::f1_score(gold, metrics::binarize(scores, metrics::kDefaultThreshold)).f1;
}

}  // namespace

TrainedModel train(const std::vector<Sample>& train_set, const std::vector<Sample>& validation_set,
                   const ModelConfig& config) {
    validate(config);
    if (train_set.empty()) throw TrainingError("training set is empty");
    if (validation_set.empty()) throw TrainingError("validation set is empty");

    std::vector<bool> gold(validation_set.size());
    for (std::size_t i = 0; i < validation_set.size(); ++i) gold[i] = validation_set[i].soft_label >= 0.5;
    const auto positives = std::count(gold.begin(), gold.end(), true);
    if (positives == 0 || positives == static_cast<long>(gold.size())) {
        throw TrainingError("validation set contains a single class; F1 cannot select a model");
    }

    TrainedModel model;
    model.config = config;
    model.normalizer = Normalizer::fit(train_set);
    const std::uint32_t dims = config.hash_dims;

    std::vector<SparseVector> xs;
    std::vector<double> ys;
    xs.reserve(train_set.size());
    for (const auto& s : train_set) {
        xs.push_back(encode(s.text, s.features, model.normalizer, dims));
        ys.push_back(target_of(s, config.target));
    }
    std::vector<SparseVector> val_xs;
    for (const auto& s : validation_set) val_xs.push_back(encode(s.text, s.features, model.normalizer, dims));

    std::vector<double> weights(weight_count(dims), 0.0);
    std::vector<double> best_weights = weights;
    std::vector<double> grad(weights.size(), 0.0);
    std::vector<std::uint32_t> touched;
    std::vector<char> is_touched(weights.size(), 0);
    const std::size_t bias = weights.size() - 1;

    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    SeededRng rng(config.seed);
    const std::size_t batch = config.batch_size == 0 ? xs.size() : config.batch_size;

    double best_f1 = -1.0;
    int since_best = 0;
    for (int epoch = 1; epoch <= config.epochs_max; ++epoch) {
        double lr = config.learning_rate;
        if (config.linear_decay) lr *= 1.0 - static_cast<double>(epoch - 1) / static_cast<double>(config.epochs_max);
        if (config.batch_size != 0) rng.shuffle(order);

        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t stop = std::min(order.size(), start + batch);
            for (std::size_t k = start; k < stop; ++k) {
                const auto i = order[k];
                const double residual = sigmoid(dot(weights, xs[i])) - ys[i];
                for (const auto& [index, value] : xs[i]) {
                    grad[index] += residual * value;
                    if (!is_touched[index]) {
                        is_touched[index] = 1;
                        touched.push_back(index);
                    }
                }
            }
            const double scale = 1.0 / static_cast<double>(stop - start);
            if (config.l2 > 0.0) {
                for (std::size_t j = 0; j < bias; ++j) weights[j] -= lr * config.l2 * weights[j];
            }
            for (auto index : touched) {
                weights[index] -= lr * grad[index] * scale;
                grad[index] = 0.0;
                is_touched[index] = 0;
            }
            touched.clear();
        }

        EpochLog log;
        log.epoch = epoch;
        log.learning_rate = lr;
        log.train_loss = mean_loss(weights, xs, ys, config.l2);
        if (!std::isfinite(log.train_loss)) {
            throw TrainingError("training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)");
        }
        log.validation_f1 = validation_f1(weights, val_xs, gold);
        model.history.push_back(log);
        model.epochs_run = epoch;

        if (log.validation_f1 > best_f1) {
            best_f1 = log.validation_f1;
            best_weights = weights;
            model.best_epoch = epoch;
            since_best = 0;
        } else if (++since_best >= config.patience) {
            break;
        }
    }
    model.weights = std::move(best_weights);
    model.validation_f1 = best_f1;
    return model;
}

double predict(const TrainedModel& model, std::string_view text, const features::FeatureVector& feats) {
    return sigmoid(dot(model.weights, encode(text, feats, model.normalizer, model.config.hash_dims)));
}

double predict(const TrainedModel& model, const Sample& sample) { return predict(model, sample.text, sample.features); }

namespace {

constexpr std::string_view kMagic = "pcl-linear-model 1";

void write_model(std::string& out, const TrainedModel& m) {
    const auto& c = m.config;
    out += std::string(kMagic) + '\n';
    out += "name " + m.name + '\n';
    out += "hash_dims " + std::to_string(c.hash_dims) + '\n';
    out += "learning_rate " + io::format_exact(c.learning_rate) + '\n';
    out += "linear_decay " + std::string(c.linear_decay ? "1" : "0") + '\n';
    out += "epochs_max " + std::to_string(c.epochs_max) + '\n';
    out += "patience " + std::to_string(c.patience) + '\n';
    out += "l2 " + io::format_exact(c.l2) + '\n';
    out += "batch_size " + std::to_string(c.batch_size) + '\n';
    out += "seed " + std::to_string(c.seed) + '\n';
    out += "target " + std::string(to_string(c.target)) + '\n';
    out += "best_epoch " + std::to_string(m.best_epoch) + '\n';
    out += "epochs_run " + std::to_string(m.epochs_run) + '\n';
    out += "validation_f1 " + io::format_exact(m.validation_f1) + '\n';
    out += "mean";
    for (double v : m.normalizer.mean) out += ' ' + io::format_exact(v);
    out += "\nstddev";
    for (double v : m.normalizer.stddev) out += ' ' + io::format_exact(v);
    std::size_t nonzero = 0;
    for (double w : m.weights) nonzero += w != 0.0;
    out += "\nweights " + std::to_string(nonzero) + '\n';
    for (std::size_t j = 0; j < m.weights.size(); ++j) {
        if (m.weights[j] != 0.0) out += std::to_string(j) + ' ' + io::format_exact(m.weights[j]) + '\n';
    }
    out += "end\n";
}

}  // namespace

void save_models(const std::filesystem::path& path, const std::vector<TrainedModel>& models) {
    std::string out;
    for (const auto& m : models) write_model(out, m);
    io::write_file(path, out);
}

std::vector<TrainedModel> load_models(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    const std::string source = path.string();
    std::vector<TrainedModel> models;
    std::size_t i = 0;
    auto fail = [&](const std::string& message) { throw ParseError(source, i + 1, message); };
    auto number = [&](std::string_view field) {
        double v = 0.0;
        if (!io::parse_double(field, v)) fail("bad number '" + std::string(field) + "'");
        return v;
    };
    auto integer = [&](std::string_view field) {
        long long v = 0;
        if (!io::parse_int(field, v)) fail("bad integer '" + std::string(field) + "'");
        return v;
    };

    while (i < lines.size()) {
        if (lines[i].empty()) {
            ++i;
            continue;
        }
        if (lines[i] != kMagic) fail("expected '" + std::string(kMagic) + "'");
        ++i;
        TrainedModel m;
        bool have_weights = false;
        for (; i < lines.size() && lines[i] != "end"; ++i) {
            std::istringstream row(lines[i]);
            std::string key;
            row >> key;
            std::string rest;
            std::getline(row, rest);
            rest = io::trim(rest);
            auto& c = m.config;
            if (key == "name") m.name = rest;
            else if (key == "hash_dims") c.hash_dims = static_cast<std::uint32_t>(integer(rest));
            else if (key == "learning_rate") c.learning_rate = number(rest);
            else if (key == "linear_decay") c.linear_decay = integer(rest) != 0;
            else if (key == "epochs_max") c.epochs_max = static_cast<int>(integer(rest));
            else if (key == "patience") c.patience = static_cast<int>(integer(rest));
            else if (key == "l2") c.l2 = number(rest);
            else if (key == "batch_size") c.batch_size = static_cast<std::size_t>(integer(rest));
            else if (key == "seed") c.seed = static_cast<std::uint64_t>(integer(rest));
            else if (key == "target") {
                const auto t = parse_target(rest);
                if (!t) fail("unknown target '" + rest + "'");
                c.target = *t;
            } else if (key == "best_epoch") m.best_epoch = static_cast<int>(integer(rest));
            else if (key == "epochs_run") m.epochs_run = static_cast<int>(integer(rest));
            else if (key == "validation_f1") m.validation_f1 = number(rest);
            else if (key == "mean" || key == "stddev") {
                auto& target = key == "mean" ? m.normalizer.mean : m.normalizer.stddev;
                std::istringstream values(rest);
                for (auto& v : target) {
                    std::string field;
                    if (!(values >> field)) fail("expected 12 values for " + key);
                    v = number(field);
                }
            } else if (key == "weights") {
                const auto count = static_cast<std::size_t>(integer(rest));
                m.weights.assign(weight_count(c.hash_dims), 0.0);
                for (std::size_t k = 0; k < count; ++k) {
                    ++i;
                    if (i >= lines.size()) fail("truncated weight list");
                    const auto space = lines[i].find(' ');
                    if (space == std::string::npos) fail("expected 'index value'");
                    const auto index = static_cast<std::size_t>(integer(std::string_view(lines[i]).substr(0, space)));
                    if (index >= m.weights.size()) fail("weight index out of range");
                    m.weights[index] = number(std::string_view(lines[i]).substr(space + 1));
                }
                have_weights = true;
            } else {
                fail("unknown key '" + key + "'");
            }
        }
        if (i >= lines.size()) fail("missing 'end'");
        ++i;
        if (!have_weights) fail("model block has no weights");
        for (double w : m.weights) {
            if (!std::isfinite(w)) fail("non-finite weight");
        }
        validate(m.config);
        models.push_back(std::move(m));
    }
    if (models.empty()) throw ParseError(source, 0, "no model blocks");
    return models;
}

ensemble::ScoreMatrix score_samples(const std::vector<TrainedModel>& models, const std::vector<Sample>& samples,
                                    std::string model_id) {
    if (models.size() != 1 && models.size() != corpus::kCategoryCount) {
        throw ValidationError("score export needs 1 or 7 models, got " + std::to_string(models.size()));
    }
    ensemble::ScoreMatrix m;
    m.model_id = std::move(model_id);
    m.columns = models.size();
    std::unordered_set<std::string_view> seen;
    for (const auto& s : samples) {
        if (!seen.insert(s.id).second) throw ValidationError("duplicate sample id '" + s.id + "'");
        m.ids.push_back(s.id);
        for (const auto& model : models) m.scores.push_back(predict(model, s));
    }
    return m;
}

void export_scores(const std::vector<TrainedModel>& models, const std::vector<Sample>& samples,
                   const std::filesystem::path& path, std::string model_id) {
    ensemble::write_score_file(path, score_samples(models, samples, std::move(model_id)));
}

}  // namespace pcl::model
