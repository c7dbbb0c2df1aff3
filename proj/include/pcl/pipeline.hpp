#pragma once

// Stage functions behind the CLI. run_all chains the same stages as the
// individual subcommands and round-trips through the same files, so both
// paths yield identical metrics.

#include "pcl/augment.hpp"
#include "pcl/config.hpp"
#include "pcl/corpus.hpp"
#include "pcl/ensemble.hpp"
#include "pcl/metrics.hpp"
#include "pcl/model.hpp"
#include "pcl/report.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace pcl::pipeline {

struct Dataset {
    corpus::BinaryCorpus corpus;
    std::vector<corpus::CategoryRecord> categories;  // expanded with negatives; empty without a category file
};

Dataset load_dataset(const config::PipelineConfig& config);

// Split file when configured, seeded split otherwise.
corpus::SplitAssignment resolve_split(const config::PipelineConfig& config,
                                      const std::vector<corpus::Paragraph>& paragraphs);

// Gold labels keyed by id: one column (binary) or seven (multi-label).
struct GoldTable {
    std::size_t columns = 1;
    std::vector<std::string> ids;  // file or corpus order
    std::unordered_map<std::string, std::vector<bool>> labels;

    const std::vector<bool>& at(const std::string& id) const;
};

GoldTable gold_from_dataset(config::Task task, const Dataset& dataset);
// "id<TAB>label" (0/1) or "id<TAB>c0..c6".
GoldTable read_gold_file(const std::filesystem::path& path);
void write_gold_file(const std::filesystem::path& path, const GoldTable& gold);

std::unique_ptr<augment::Translator> make_translator(const config::PipelineConfig& config);

// Back-translates the training part only; validation and test stay untouched.
augment::AugmentReport augment_training(const config::PipelineConfig& config, const Dataset& dataset,
                                        const corpus::SplitAssignment& split, augment::Translator& translator);

// Reads an augmented corpus written by write_augmented.
std::vector<corpus::Paragraph> read_augmented(const std::filesystem::path& path);

// One model (binary) or seven per-category models (multi-label).
std::vector<model::TrainedModel> train_models(const config::PipelineConfig& config, const Dataset& dataset,
                                              const corpus::SplitAssignment& split,
                                              const std::vector<corpus::Paragraph>& augmented,
                                              std::vector<std::string>& warnings);

// Scores every corpus paragraph.
ensemble::ScoreMatrix score_corpus(const std::vector<model::TrainedModel>& models, const Dataset& dataset,
                                   const std::string& model_id);

// Scores restricted to `ids`, column by column, against gold.
std::vector<metrics::LabeledScores> labeled_columns(const ensemble::ScoreMatrix& scores, const GoldTable& gold,
                                                    const std::vector<std::string>& ids);

struct ThresholdChoice {
    std::vector<double> thresholds;                         // one per column
    std::vector<metrics::ThresholdSearchResult> searches;   // validation search per column, marked at the applied threshold
};

ThresholdChoice choose_thresholds(const config::ThresholdPolicy& policy, const ensemble::ScoreMatrix& scores,
                                  const GoldTable& gold, const std::vector<std::string>& validation_ids);

// "column<TAB>threshold" with round-trip precision.
void write_thresholds(const std::filesystem::path& path, const std::vector<double>& thresholds);
std::vector<double> read_thresholds(const std::filesystem::path& path);

// curve.tsv/.svg for one column; curve_c<k>.tsv/.svg per category otherwise.
void emit_curves(const ThresholdChoice& choice, const std::filesystem::path& dir);

struct Evaluation {
    std::vector<metrics::MetricsReport> per_column;
    metrics::MultiLabelReport multilabel;  // filled for seven columns
};

Evaluation evaluate(const ensemble::ScoreMatrix& scores, const GoldTable& gold, const std::vector<std::string>& ids,
                    const std::vector<double>& thresholds);

struct ReportInputs {
    std::vector<ensemble::ScoreMatrix> members;  // scored at the default threshold
    ensemble::ScoreMatrix system;                // the ensemble, scored at `thresholds`
    std::vector<double> thresholds;
    ensemble::ScoreMatrix baseline;              // error-analysis baseline at the default threshold
    GoldTable gold;
    const Dataset* dataset = nullptr;            // texts and categories for errors.md
    corpus::SplitAssignment split;
};

// metrics.tsv and errors.md; returns the metric entries for the manifest.
std::map<std::string, double> emit_reports(const ReportInputs& inputs, const std::filesystem::path& dir);

std::string default_run_id(const config::PipelineConfig& config);

struct RunSummary {
    std::filesystem::path run_dir;
    std::string run_id;
    std::vector<double> thresholds;
    std::map<std::string, double> metrics;
    std::vector<std::string> warnings;
    augment::AugmentReport augmentation;
};

RunSummary run_all(const config::PipelineConfig& config);

// Manifest shared by run_all and the report subcommand.
report::RunManifest build_manifest(const config::PipelineConfig& config, const std::string& run_id,
                                   const std::map<std::string, std::filesystem::path>& inputs,
                                   const std::vector<std::string>& member_models,
                                   const std::vector<double>& thresholds,
                                   const std::map<std::string, double>& metrics);

// Rebuilds the effective configuration recorded in a manifest.
config::PipelineConfig config_from_manifest(const report::RunManifest& manifest);

}  // namespace pcl::pipeline
