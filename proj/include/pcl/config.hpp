#pragma once

// Pipeline configuration: a flat "key = value" file whose keys mirror the
// command-line flags. Flags override file values.

#include "pcl/augment.hpp"
#include "pcl/ensemble.hpp"
#include "pcl/model.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcl::config {

enum class Task { Binary, MultiLabel };

std::optional<Task> parse_task(std::string_view name);
const char* to_string(Task task);

struct ThresholdPolicy {
    enum class Kind { Search, MidOfPlateau, Preset, Values };

    Kind kind = Kind::Search;
    std::vector<double> values;  // Kind::Values: 1 entry (binary) or 7 (multi-label)

    // "search", "mid-of-plateau", "preset:paper", "value:<v>[,<v>...]"
    static ThresholdPolicy parse(std::string_view text);
    std::string render() const;
};

struct PipelineConfig {
    Task task = Task::Binary;
    std::uint64_t seed = 221;

    std::filesystem::path corpus;
    std::size_t corpus_header_lines = 0;
    std::filesystem::path categories;
    std::size_t categories_header_lines = 0;
    std::filesystem::path split_file;
    double test_fraction = 0.2;
    double validation_fraction = 0.15;

    // Augmentation: translator "none" disables it.
    std::string translator = "none";
    std::string mt_url;
    int mt_timeout_ms = 30000;
    int mt_retries = 2;
    augment::Policy augment_policy = augment::Policy::PositivesOnly;
    bool augment_dedup = true;
    std::string pivot = "fr";
    std::size_t augment_concurrency = 4;
    std::filesystem::path translation_cache;

    model::ModelConfig model;

    std::vector<std::filesystem::path> members;  // extra score files to ensemble
    ensemble::Alignment alignment = ensemble::Alignment::Strict;
    ThresholdPolicy thresholds;
    std::filesystem::path baseline_scores;  // error-analysis baseline; default: linear model at 0.5

    std::filesystem::path out = "runs";
    std::string run_id;

    // Applies one key. Throws UsageError for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);

    // Every key with its effective value, in a stable order.
    std::map<std::string, std::string> snapshot() const;

    // Checks that referenced inputs exist and values are coherent.
    void validate() const;
};

// Reads "key = value" lines; '#' starts a comment; values may be quoted.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

PipelineConfig load(const std::optional<std::filesystem::path>& file,
                    const std::vector<std::pair<std::string, std::string>>& overrides);

// Environment fallback for the MT service URL.
inline constexpr const char* kMtUrlEnv = "PCL_MT_URL";

}  // namespace pcl::config
