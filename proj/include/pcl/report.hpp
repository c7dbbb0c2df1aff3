#pragma once

// Run artifacts: metric tables, the threshold/F1 curve (TSV + SVG), error
// analysis listings and the run manifest.

#include "pcl/corpus.hpp"
#include "pcl/metrics.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pcl::report {

enum class Bucket { BothCorrect, SystemFixed, SystemBroke, BothWrong };

const char* to_string(Bucket bucket);

enum class ErrorKind { None, FalsePositive, FalseNegative };

const char* to_string(ErrorKind kind);

struct GoldItem {
    std::string id;
    std::string text;
    bool label = false;
    corpus::CategoryVector categories{};
};

struct Prediction {
    std::string id;
    bool positive = false;
};

struct ErrorAnalysisRow {
    std::string id;
    std::string text;
    bool gold = false;
    bool baseline = false;
    bool system = false;
    corpus::CategoryVector categories{};
    Bucket bucket = Bucket::BothCorrect;
    // Kind of the mistake in the row (whichever system made it); None for
    // both-correct rows.
    ErrorKind kind = ErrorKind::None;
};

Bucket bucket_of(bool gold, bool baseline, bool system);

// Rows follow gold order. Throws ConsistencyError unless all three id sets
// are identical.
std::vector<ErrorAnalysisRow> compare_systems(const std::vector<GoldItem>& gold,
                                              const std::vector<Prediction>& baseline,
                                              const std::vector<Prediction>& system);

// Markdown listing grouped by bucket and error kind, at most max_rows per
// group (0 = unlimited).
std::string format_error_analysis(const std::vector<ErrorAnalysisRow>& rows, std::size_t max_rows = 0);

struct CurveFiles {
    std::filesystem::path tsv;
    std::filesystem::path svg;
};

// "threshold<TAB>f1" rows plus an SVG line chart with the chosen point
// marked. Throws ValidationError for an empty curve.
void emit_threshold_curve(const metrics::ThresholdSearchResult& result, const CurveFiles& files);
std::string format_curve_tsv(const metrics::ThresholdSearchResult& result);
std::string render_curve_svg(const metrics::ThresholdSearchResult& result);

struct NamedReport {
    std::string name;
    metrics::MetricsReport report;
};

struct NamedMultiLabelReport {
    std::string name;
    metrics::MultiLabelReport report;
};

// Percentages with two decimals, rounded from the stored values.
std::string format_percent(double fraction);

// "system<TAB>P<TAB>R<TAB>F1".
std::string format_metrics_table(const std::vector<NamedReport>& reports);
// "system<TAB>macro_P<TAB>macro_R<TAB>macro_F1<TAB>F1_c0..F1_c6".
std::string format_multilabel_table(const std::vector<NamedMultiLabelReport>& reports);

void emit_metrics_table(const std::vector<NamedReport>& reports, const std::filesystem::path& path);
void emit_multilabel_table(const std::vector<NamedMultiLabelReport>& reports, const std::filesystem::path& path);

// Flat key/value record of everything a run consumed and produced. Stored as
// TOML-style "key = value" lines; strings quoted, numbers bare.
struct RunManifest {
    std::map<std::string, std::string> values;  // raw rendered values, sorted by key

    void set(const std::string& key, const std::string& text);  // quoted string
    void set_number(const std::string& key, double value);      // round-trip precision
    void set_integer(const std::string& key, long long value);
    std::string get(const std::string& key) const;               // unquoted
    bool has(const std::string& key) const { return values.count(key) > 0; }

    std::string render() const;
    static RunManifest parse(const std::string& text, const std::string& source);
};

// "fnv1a64:<hex>" over the file bytes.
std::string file_checksum(const std::filesystem::path& path);

// Recomputes every "checksum.<name>" entry against "input.<name>" and lists
// the mismatches (empty when everything verifies).
std::vector<std::string> verify_manifest_inputs(const RunManifest& manifest);

}  // namespace pcl::report
