#include "pcl/config.hpp"

#include "pcl/error.hpp"
#include "pcl/metrics.hpp"
#include "pcl/text_io.hpp"

#include <cstdlib>
#include <sstream>

namespace pcl::config {

std::optional<Task> parse_task(std::string_view name) {
    if (name == "binary") return Task::Binary;
    if (name == "multilabel" || name == "multi-label") return Task::MultiLabel;
    return std::nullopt;
}

const char* to_string(Task task) { return task == Task::Binary ? "binary" : "multilabel"; }

ThresholdPolicy ThresholdPolicy::parse(std::string_view text) {
    ThresholdPolicy p;
    if (text == "search") return p;
    if (text == "mid-of-plateau") {
        p.kind = Kind::MidOfPlateau;
        return p;
    }
    if (text == "preset:paper") {
        p.kind = Kind::Preset;
        return p;
    }
    constexpr std::string_view prefix = "value:";
    if (text.substr(0, prefix.size()) == prefix) {
        p.kind = Kind::Values;
        std::string_view rest = text.substr(prefix.size());
        while (true) {
            const auto comma = rest.find(',');
            const auto item = io::trim(rest.substr(0, comma));
            double v = 0.0;
            if (!io::parse_double(item, v) || !(v >= 0.0 && v <= 1.0)) {
                throw UsageError("threshold value '" + item + "' must be a number in [0, 1]");
            }
            p.values.push_back(v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (p.values.size() != 1 && p.values.size() != corpus::kCategoryCount) {
            throw UsageError("value: takes 1 threshold (binary) or 7 (multi-label)");
        }
        return p;
    }
    throw UsageError("unknown threshold mode '" + std::string(text) +
                     "' (use search, mid-of-plateau, preset:paper or value:<list>)");
}

std::string ThresholdPolicy::render() const {
    switch (kind) {
    case Kind::Search: return "search";
    case Kind::MidOfPlateau: return "mid-of-plateau";
    case Kind::Preset: return "preset:paper";
    case Kind::Values: {
        std::string out = "value:";
        for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + io::format_exact(values[i]);
        return out;
    }
    }
    return "search";
}

namespace {

long long to_integer(const std::string& key, const std::string& value) {
    long long v = 0;
    if (!io::parse_int(value, v)) throw UsageError("config key '" + key + "' expects an integer, got '" + value + "'");
    return v;
}

double to_real(const std::string& key, const std::string& value) {
    double v = 0.0;
    if (!io::parse_double(value, v)) throw UsageError("config key '" + key + "' expects a number, got '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw UsageError("config key '" + key + "' expects true/false, got '" + value + "'");
}

std::size_t to_count(const std::string& key, const std::string& value) {
    const auto v = to_integer(key, value);
    if (v < 0) throw UsageError("config key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<std::filesystem::path> to_paths(const std::string& value) {
    std::vector<std::filesystem::path> out;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = io::trim(item);
        if (!item.empty()) out.emplace_back(item);
    }
    return out;
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "task") {
        const auto t = parse_task(value);
        if (!t) throw UsageError("task must be 'binary' or 'multilabel'");
        task = *t;
    } else if (key == "seed") {
        const auto v = to_integer(key, value);
        if (v < 0) throw UsageError("seed must be non-negative");
        seed = static_cast<std::uint64_t>(v);
        model.seed = seed;
    } else if (key == "corpus") corpus = value;
    else if (key == "corpus_header_lines") corpus_header_lines = to_count(key, value);
    else if (key == "categories") categories = value;
    else if (key == "categories_header_lines") categories_header_lines = to_count(key, value);
    else if (key == "split_file") split_file = value;
    else if (key == "test_fraction") test_fraction = to_real(key, value);
    else if (key == "validation_fraction") validation_fraction = to_real(key, value);
    else if (key == "translator") {
        if (value != "none" && value != "identity" && value != "reverse" && value != "word-shuffle" && value != "http") {
            throw UsageError("translator must be one of none, identity, reverse, word-shuffle, http");
        }
        translator = value;
    } else if (key == "mt_url") mt_url = value;
    else if (key == "mt_timeout_ms") mt_timeout_ms = static_cast<int>(to_integer(key, value));
    else if (key == "mt_retries") mt_retries = static_cast<int>(to_integer(key, value));
    else if (key == "augment_policy") {
        const auto p = augment::parse_policy(value);
        if (!p) throw UsageError("augment_policy must be 'positives-only' or 'all'");
        augment_policy = *p;
    } else if (key == "augment_dedup") augment_dedup = to_bool(key, value);
    else if (key == "pivot") pivot = value;
    else if (key == "augment_concurrency") augment_concurrency = to_count(key, value);
    else if (key == "translation_cache") translation_cache = value;
    else if (key == "hash_dims") {
        const auto v = to_integer(key, value);
        if (v < 1 || v > (1LL << 30)) throw UsageError("hash_dims must be in [1, 2^30]");
        model.hash_dims = static_cast<std::uint32_t>(v);
    } else if (key == "learning_rate") model.learning_rate = to_real(key, value);
    else if (key == "linear_decay") model.linear_decay = to_bool(key, value);
    else if (key == "epochs_max") model.epochs_max = static_cast<int>(to_integer(key, value));
    else if (key == "patience") model.patience = static_cast<int>(to_integer(key, value));
    else if (key == "l2") model.l2 = to_real(key, value);
    else if (key == "batch_size") model.batch_size = to_count(key, value);
    else if (key == "target") {
        const auto t = model::parse_target(value);
        if (!t) throw UsageError("target must be 'soft-labels' or 'hard-labels'");
        model.target = *t;
    } else if (key == "members") members = to_paths(value);
    else if (key == "align") {
        if (value == "strict") alignment = ensemble::Alignment::Strict;
        else if (value == "lenient") alignment = ensemble::Alignment::Lenient;
        else throw UsageError("align must be 'strict' or 'lenient'");
    } else if (key == "thresholds") thresholds = ThresholdPolicy::parse(value);
    else if (key == "baseline_scores") baseline_scores = value;
    else if (key == "out") out = value;
    else if (key == "run_id") run_id = value;
    else throw UsageError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> PipelineConfig::snapshot() const {
    std::map<std::string, std::string> s;
    s["task"] = to_string(task);
    s["seed"] = std::to_string(seed);
    s["corpus"] = corpus.string();
    s["corpus_header_lines"] = std::to_string(corpus_header_lines);
    s["categories"] = categories.string();
    s["categories_header_lines"] = std::to_string(categories_header_lines);
    s["split_file"] = split_file.string();
    s["test_fraction"] = io::format_exact(test_fraction);
    s["validation_fraction"] = io::format_exact(validation_fraction);
    s["translator"] = translator;
    s["mt_url"] = mt_url;
    s["mt_timeout_ms"] = std::to_string(mt_timeout_ms);
    s["mt_retries"] = std::to_string(mt_retries);
    s["augment_policy"] = augment::to_string(augment_policy);
    s["augment_dedup"] = augment_dedup ? "true" : "false";
    s["pivot"] = pivot;
    s["augment_concurrency"] = std::to_string(augment_concurrency);
    s["translation_cache"] = translation_cache.string();
    s["hash_dims"] = std::to_string(model.hash_dims);
    s["learning_rate"] = io::format_exact(model.learning_rate);
    s["linear_decay"] = model.linear_decay ? "true" : "false";
    s["epochs_max"] = std::to_string(model.epochs_max);
    s["patience"] = std::to_string(model.patience);
    s["l2"] = io::format_exact(model.l2);
    s["batch_size"] = std::to_string(model.batch_size);
    s["target"] = model::to_string(model.target);
    std::string m;
    for (const auto& p : members) m += (m.empty() ? "" : ",") + p.string();
    s["members"] = m;
    s["align"] = alignment == ensemble::Alignment::Strict ? "strict" : "lenient";
    s["thresholds"] = thresholds.render();
    s["baseline_scores"] = baseline_scores.string();
    s["out"] = out.string();
    s["run_id"] = run_id;
    return s;
}

void PipelineConfig::validate() const {
    auto require_file = [](const std::filesystem::path& p, const std::string& what) {
        if (!p.empty() && !std::filesystem::exists(p)) {
            throw UsageError(what + " '" + p.string() + "' does not exist");
        }
    };
    if (corpus.empty()) throw UsageError("no corpus given (set --corpus or 'corpus' in the config file)");
    require_file(corpus, "corpus");
    require_file(categories, "category corpus");
    require_file(split_file, "split file");
    require_file(baseline_scores, "baseline score file");
    for (const auto& m : members) require_file(m, "member score file");
    if (task == Task::MultiLabel && categories.empty()) {
        throw UsageError("the multilabel task needs --categories");
    }
    if (translator == "http" && mt_url.empty()) {
        throw UsageError("translator 'http' needs --mt-url or the " + std::string(kMtUrlEnv) + " variable");
    }
    if (thresholds.kind == ThresholdPolicy::Kind::Values) {
        const std::size_t want = task == Task::Binary ? 1 : corpus::kCategoryCount;
        if (thresholds.values.size() != want) {
            throw UsageError("--thresholds value: needs " + std::to_string(want) + " value(s) for this task");
        }
    }
    model::validate(model);
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    std::map<std::string, std::string> values;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line = lines[i];
        bool in_quotes = false;
        for (std::size_t k = 0; k < line.size(); ++k) {
            if (line[k] == '"') in_quotes = !in_quotes;
            if (line[k] == '#' && !in_quotes) {
                line.resize(k);
                break;
            }
        }
        const auto trimmed = io::trim(line);
        if (trimmed.empty()) continue;
        if (trimmed.front() == '[') continue;  // section headers are tolerated and ignored
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) throw ParseError(path.string(), i + 1, "expected 'key = value'");
        const auto key = io::trim(std::string_view(trimmed).substr(0, eq));
        auto value = io::trim(std::string_view(trimmed).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        values[key] = value;
    }
    return values;
}

PipelineConfig load(const std::optional<std::filesystem::path>& file,
                    const std::vector<std::pair<std::string, std::string>>& overrides) {
    PipelineConfig config;
    if (const char* env = std::getenv(kMtUrlEnv); env && *env) config.mt_url = env;
    if (file) {
        for (const auto& [key, value] : read_config_file(*file)) config.set(key, value);
    }
    for (const auto& [key, value] : overrides) config.set(key, value);
    return config;
}

}  // namespace pcl::config
