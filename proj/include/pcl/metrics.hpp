#pragma once

// Binarization, precision/recall/F1, macro-F1 and the brute-force search for
// the F1-maximizing decision threshold.

#include "pcl/corpus.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcl::metrics {

// y >= threshold is positive.
std::vector<bool> binarize(const std::vector<double>& scores, double threshold);

struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
};

Confusion confusion(const std::vector<bool>& y_true, const std::vector<bool>& y_pred);

struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    Confusion counts{};

    // For tabulating externally reported precision/recall pairs.
    static MetricsReport from_precision_recall(double precision, double recall);
};

// Harmonic mean; 0 when both inputs are 0.
double harmonic_f1(double precision, double recall);

// P = TP/(TP+FP), R = TP/(TP+FN); an empty denominator yields 0.
MetricsReport report_from_counts(const Confusion& counts);

// Throws ValidationError for mismatched or empty inputs.
MetricsReport f1_score(const std::vector<bool>& y_true, const std::vector<bool>& y_pred);

struct LabeledScores {
    std::vector<bool> y_true;
    std::vector<double> y_out;
};

struct CurvePoint {
    double threshold = 0.0;
    double f1 = 0.0;
    double recall = 0.0;
};

enum class SearchMode {
    // Best candidate score (ties: higher recall, then smaller threshold).
    BestCandidate,
    // Middle of the widest threshold interval that attains the best F1.
    MidOfPlateau,
};

struct ThresholdSearchResult {
    double best_threshold = 0.5;
    double best_f1 = 0.0;
    std::vector<CurvePoint> curve;  // one point per distinct score, ascending threshold
    // Interval (plateau_low, plateau_high] of thresholds reaching best_f1;
    // filled for both modes.
    double plateau_low = 0.0;
    double plateau_high = 0.0;
    // True when no candidate reached F1 > 0 (or a category had no positives)
    // and the 0.5 default was kept.
    bool fallback = false;
};

inline constexpr double kDefaultThreshold = 0.5;

// Candidates are the distinct values of y_out. Throws ValidationError when
// y_true has no positives, lengths differ, or a score is outside [0, 1].
ThresholdSearchResult find_best_threshold(const LabeledScores& data, SearchMode mode = SearchMode::BestCandidate);

using CategoryResults = std::array<ThresholdSearchResult, corpus::kCategoryCount>;

// Categories without positives keep threshold 0.5 with fallback set.
CategoryResults find_best_thresholds_multilabel(const std::array<LabeledScores, corpus::kCategoryCount>& data,
                                                SearchMode mode = SearchMode::BestCandidate);

// Operating points chosen by hand from validation curves.
inline constexpr double kPresetBinaryThreshold = 0.32;
inline constexpr std::array<double, corpus::kCategoryCount> kPresetCategoryThresholds = {
    0.5, 0.31, 0.49, 0.27, 0.29, 0.21, 0.4,
};

struct MultiLabelReport {
    std::array<MetricsReport, corpus::kCategoryCount> per_category{};
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

// Mean of the per-category F1 values (not the harmonic mean of the macro
// precision and recall).
double macro_f1(const std::array<MetricsReport, corpus::kCategoryCount>& per_category);
double macro_f1(const std::vector<MetricsReport>& per_category);

MultiLabelReport multilabel_report(const std::array<std::vector<bool>, corpus::kCategoryCount>& y_true,
                                   const std::array<std::vector<bool>, corpus::kCategoryCount>& y_pred);

}  // namespace pcl::metrics
