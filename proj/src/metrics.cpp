#include "pcl/metrics.hpp"

#include "pcl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcl::metrics {

std::vector<bool> binarize(const std::vector<double>& scores, double threshold) {
    std::vector<bool> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= threshold;
    return out;
}

Confusion confusion(const std::vector<bool>& y_true, const std::vector<bool>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw ValidationError("label and prediction vectors differ in length (" + std::to_string(y_true.size()) +
                              " vs " + std::to_string(y_pred.size()) + ")");
    }
    Confusion c;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i]) (y_pred[i] ? c.tp : c.fn)++;
        else (y_pred[i] ? c.fp : c.tn)++;
    }
    return c;
}

double harmonic_f1(double precision, double recall) {
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

MetricsReport MetricsReport::from_precision_recall(double precision, double recall) {
    MetricsReport r;
    r.precision = precision;
    r.recall = recall;
    r.f1 = harmonic_f1(precision, recall);
    return r;
}

MetricsReport report_from_counts(const Confusion& counts) {
    MetricsReport r;
    r.counts = counts;
    const auto predicted = counts.tp + counts.fp;
    const auto actual = counts.tp + counts.fn;
    r.precision = predicted > 0 ? static_cast<double>(counts.tp) / static_cast<double>(predicted) : 0.0;
    r.recall = actual > 0 ? static_cast<double>(counts.tp) / static_cast<double>(actual) : 0.0;
    r.f1 = harmonic_f1(r.precision, r.recall);
    return r;
}

MetricsReport f1_score(const std::vector<bool>& y_true, const std::vector<bool>& y_pred) {
    if (y_true.empty()) throw ValidationError("cannot score an empty label vector");
    return report_from_counts(confusion(y_true, y_pred));
}

namespace {

void validate_scores(const LabeledScores& data) {
    if (data.y_true.size() != data.y_out.size()) {
        throw ValidationError("y_true and y_out differ in length (" + std::to_string(data.y_true.size()) + " vs " +
                              std::to_string(data.y_out.size()) + ")");
    }
    for (std::size_t i = 0; i < data.y_out.size(); ++i) {
        const double s = data.y_out[i];
        if (!(s >= 0.0 && s <= 1.0)) {
            throw ValidationError("score at position " + std::to_string(i) + " is outside [0, 1]");
        }
    }
}

// True when a beats b under the ordering: F1, then recall, then the smaller
// threshold.
bool better(const CurvePoint& a, const CurvePoint& b) {
    if (a.f1 != b.f1) return a.f1 > b.f1;
    if (a.recall != b.recall) return a.recall > b.recall;
    return a.threshold < b.threshold;
}

}  // namespace

ThresholdSearchResult find_best_threshold(const LabeledScores& data, SearchMode mode) {
    validate_scores(data);
    const auto positives = static_cast<std::size_t>(std::count(data.y_true.begin(), data.y_true.end(), true));
    if (positives == 0) throw ValidationError("threshold search needs at least one positive label");

    std::vector<std::size_t> order(data.y_out.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data.y_out[a] > data.y_out[b]; });

    // Sweep from the highest score down; after consuming every sample that
    // scores exactly v, the counts are those of binarize(y_out, v).
    ThresholdSearchResult result;
    Confusion counts;
    counts.fn = positives;
    counts.tn = data.y_out.size() - positives;
    for (std::size_t k = 0; k < order.size();) {
        const double v = data.y_out[order[k]];
        for (; k < order.size() && data.y_out[order[k]] == v; ++k) {
            if (data.y_true[order[k]]) {
                ++counts.tp;
                --counts.fn;
            } else {
                ++counts.fp;
                --counts.tn;
            }
        }
        const auto r = report_from_counts(counts);
        result.curve.push_back(CurvePoint{v, r.f1, r.recall});
    }
    std::reverse(result.curve.begin(), result.curve.end());

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.curve.size(); ++i) {
        if (better(result.curve[i], result.curve[best])) best = i;
    }
    if (!(result.curve[best].f1 > 0.0)) {
        result.fallback = true;
        result.best_threshold = kDefaultThreshold;
        result.best_f1 = 0.0;
        return result;
    }
    result.best_f1 = result.curve[best].f1;

    // Contiguous runs of candidates at best_f1. A run [lo, hi] covers the
    // threshold interval (curve[lo-1].threshold, curve[hi].threshold], or
    // [0, curve[hi].threshold] when lo is the first candidate.
    struct Run {
        std::size_t lo, hi;
        double low, high;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < result.curve.size(); ++i) {
        if (result.curve[i].f1 != result.best_f1) continue;
        if (!runs.empty() && runs.back().hi + 1 == i) {
            runs.back().hi = i;
            runs.back().high = result.curve[i].threshold;
        } else {
            const double low = i == 0 ? 0.0 : result.curve[i - 1].threshold;
            runs.push_back(Run{i, i, low, result.curve[i].threshold});
        }
    }
    const Run* chosen = nullptr;
    if (mode == SearchMode::BestCandidate) {
        for (const auto& run : runs) {
            if (run.lo <= best && best <= run.hi) chosen = &run;
        }
        result.best_threshold = result.curve[best].threshold;
    } else {
        // Widest run wins; on equal width the lower run (higher recall).
        for (const auto& run : runs) {
            if (!chosen || run.high - run.low > chosen->high - chosen->low) chosen = &run;
        }
        double mid = chosen->low + (chosen->high - chosen->low) / 2.0;
        if (chosen->lo > 0 && !(mid > chosen->low)) mid = chosen->high;
        if (mid > chosen->high) mid = chosen->high;
        result.best_threshold = mid;
    }
    result.plateau_low = chosen->low;
    result.plateau_high = chosen->high;
    return result;
}

CategoryResults find_best_thresholds_multilabel(const std::array<LabeledScores, corpus::kCategoryCount>& data,
                                                SearchMode mode) {
    CategoryResults results;
    for (std::size_t c = 0; c < corpus::kCategoryCount; ++c) {
        const auto& y = data[c].y_true;
        if (std::find(y.begin(), y.end(), true) == y.end()) {
            validate_scores(data[c]);
            results[c] = ThresholdSearchResult{};
            results[c].fallback = true;
            continue;
        }
        results[c] = find_best_threshold(data[c], mode);
    }
    return results;
}

double macro_f1(const std::array<MetricsReport, corpus::kCategoryCount>& per_category) {
    double sum = 0.0;
    for (const auto& r : per_category) sum += r.f1;
    return sum / static_cast<double>(per_category.size());
}

double macro_f1(const std::vector<MetricsReport>& per_category) {
    if (per_category.size() != corpus::kCategoryCount) {
        throw ValidationError("macro F1 expects exactly " + std::to_string(corpus::kCategoryCount) +
                              " category reports, got " + std::to_string(per_category.size()));
    }
    std::array<MetricsReport, corpus::kCategoryCount> fixed;
    std::copy(per_category.begin(), per_category.end(), fixed.begin());
    return macro_f1(fixed);
}

MultiLabelReport multilabel_report(const std::array<std::vector<bool>, corpus::kCategoryCount>& y_true,
                                   const std::array<std::vector<bool>, corpus::kCategoryCount>& y_pred) {
    MultiLabelReport report;
    double p = 0.0;
    double r = 0.0;
    for (std::size_t c = 0; c < corpus::kCategoryCount; ++c) {
        report.per_category[c] = f1_score(y_true[c], y_pred[c]);
        p += report.per_category[c].precision;
        r += report.per_category[c].recall;
    }
    report.macro_precision = p / static_cast<double>(corpus::kCategoryCount);
    report.macro_recall = r / static_cast<double>(corpus::kCategoryCount);
    report.macro_f1 = macro_f1(report.per_category);
    return report;
}

}  // namespace pcl::metrics
