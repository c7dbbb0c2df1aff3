#include "doctest.h"

#include "pcl/error.hpp"
#include "pcl/metrics.hpp"
#include "pcl/random.hpp"

#include <cmath>

using namespace pcl;
using namespace pcl::metrics;

namespace {

const LabeledScores kWorked{{true, false, true, false}, {0.9, 0.8, 0.7, 0.1}};

double f1_at(const LabeledScores& d, double t) { return f1_score(d.y_true, binarize(d.y_out, t)).f1; }

// Random instance with scores on a 1e-4 grid and at least one positive.
LabeledScores grid_instance(SeededRng& rng, std::size_t n) {
    LabeledScores d;
    for (std::size_t i = 0; i < n; ++i) {
        d.y_true.push_back(rng.below(3) == 0);
        d.y_out.push_back(static_cast<double>(rng.below(10001)) / 10000.0);
    }
    d.y_true[rng.below(n)] = true;
    return d;
}

}  // namespace

TEST_CASE("binarize is inclusive") {
    CHECK(binarize({0.5}, 0.5) == std::vector<bool>{true});
    CHECK(binarize({0.49, 0.51}, 0.5) == std::vector<bool>{false, true});
}

TEST_CASE("precision, recall and F1 from counts") {
    const auto r = f1_score({true, true, false, false}, {true, false, true, false});
    CHECK(r.counts.tp == 1);
    CHECK(r.counts.fp == 1);
    CHECK(r.counts.fn == 1);
    CHECK(r.counts.tn == 1);
    CHECK(r.f1 == doctest::Approx(0.5));
    const auto none = f1_score({false, false}, {false, false});
    CHECK(none.precision == 0.0);
    CHECK(none.recall == 0.0);
    CHECK(none.f1 == 0.0);
    CHECK(harmonic_f1(0, 0) == 0.0);
    CHECK_THROWS_AS(f1_score({true}, {true, false}), ValidationError);
    CHECK_THROWS_AS(f1_score({}, {}), ValidationError);
}

TEST_CASE("F1 from reported precision and recall") {
    const auto r = MetricsReport::from_precision_recall(0.6595, 0.5585);
    CHECK(r.f1 * 100 == doctest::Approx(60.48).epsilon(5e-5));
}

TEST_CASE("F1 is symmetric in precision and recall") {
    SeededRng rng(3);
    for (int i = 0; i < 200; ++i) {
        const double p = rng.uniform(), r = rng.uniform();
        CHECK(harmonic_f1(p, r) == harmonic_f1(r, p));
        CHECK(harmonic_f1(p, r) <= std::max(p, r));
        CHECK(harmonic_f1(p, r) >= std::min(p, r) - 1e-15);
    }
}

TEST_CASE("worked example picks 0.7 with F1 0.8") {
    const auto r = find_best_threshold(kWorked);
    CHECK(r.best_threshold == 0.7);
    CHECK(r.best_f1 == doctest::Approx(0.8));
    CHECK_FALSE(r.fallback);
    REQUIRE(r.curve.size() == 4);
    CHECK(r.curve[0].threshold == 0.1);
    CHECK(r.curve[0].f1 == doctest::Approx(2.0 / 3.0));
    CHECK(r.curve[3].threshold == 0.9);
    CHECK(r.curve[3].f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("constant scores pick the constant") {
    const auto r = find_best_threshold({{true, false, true}, {0.6, 0.6, 0.6}});
    CHECK(r.best_threshold == 0.6);
    CHECK(r.curve.size() == 1);
}

TEST_CASE("perfectly separated scores reach F1 1") {
    const auto r = find_best_threshold({{false, false, true, true}, {0.1, 0.3, 0.6, 0.8}});
    CHECK(r.best_f1 == 1.0);
    CHECK(r.best_threshold == 0.6);
}

TEST_CASE("ties prefer higher recall") {
    // t=0.8: P=1 R=1/2 F1=2/3; t=0.2: P=1/2 R=1 F1=2/3.
    const auto r = find_best_threshold({{true, false, false, true}, {0.8, 0.5, 0.5, 0.2}});
    CHECK(r.best_f1 == doctest::Approx(2.0 / 3.0));
    CHECK(r.best_threshold == 0.2);
}

TEST_CASE("mid-of-plateau returns the middle of the widest plateau") {
    const auto r = find_best_threshold({{false, true, true}, {0.2, 0.6, 0.8}}, SearchMode::MidOfPlateau);
    CHECK(r.best_f1 == 1.0);
    CHECK(r.plateau_low == 0.2);
    CHECK(r.plateau_high == 0.6);
    CHECK(r.best_threshold == doctest::Approx(0.4));
    CHECK(f1_at({{false, true, true}, {0.2, 0.6, 0.8}}, r.best_threshold) == 1.0);
}

TEST_CASE("search input errors") {
    CHECK_THROWS_AS(find_best_threshold({{false, false}, {0.1, 0.2}}), ValidationError);
    CHECK_THROWS_AS(find_best_threshold({{true}, {0.1, 0.2}}), ValidationError);
    CHECK_THROWS_AS(find_best_threshold({{true}, {1.5}}), ValidationError);
}

TEST_CASE("best F1 matches a brute-force grid scan") {
    SeededRng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = grid_instance(rng, 5 + rng.below(40));
        double oracle = 0.0;
        for (int i = 0; i <= 10000; ++i) oracle = std::max(oracle, f1_at(d, i / 10000.0));
        const auto r = find_best_threshold(d);
        CHECK(r.best_f1 == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(f1_at(d, r.best_threshold) == doctest::Approx(r.best_f1).epsilon(1e-12));
        bool on_curve = false;
        for (const auto& p : r.curve) on_curve = on_curve || p.threshold == r.best_threshold;
        CHECK(on_curve);
        const auto mid = find_best_threshold(d, SearchMode::MidOfPlateau);
        CHECK(f1_at(d, mid.best_threshold) == doctest::Approx(r.best_f1).epsilon(1e-12));
        CHECK(mid.best_threshold > mid.plateau_low - 1e-15);
        CHECK(mid.best_threshold <= mid.plateau_high);
    }
}

TEST_CASE("monotone transforms move the threshold but keep the F1") {
    SeededRng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = grid_instance(rng, 20);
        auto squashed = d;
        for (auto& s : squashed.y_out) s = s * s;
        const auto a = find_best_threshold(d);
        const auto b = find_best_threshold(squashed);
        CHECK(a.best_f1 == b.best_f1);
        CHECK(b.best_threshold == a.best_threshold * a.best_threshold);
    }
}

TEST_CASE("per-category search with seven copies of the worked example") {
    std::array<LabeledScores, corpus::kCategoryCount> data;
    data.fill(kWorked);
    const auto results = find_best_thresholds_multilabel(data);
    for (const auto& r : results) {
        CHECK(r.best_threshold == 0.7);
        CHECK(r.best_f1 == doctest::Approx(0.8));
    }
}

TEST_CASE("a category without positives falls back to 0.5") {
    std::array<LabeledScores, corpus::kCategoryCount> data;
    data.fill(kWorked);
    data[2] = {{false, false}, {0.3, 0.9}};
    const auto results = find_best_thresholds_multilabel(data);
    CHECK(results[2].fallback);
    CHECK(results[2].best_threshold == kDefaultThreshold);
    CHECK_FALSE(results[1].fallback);
}

TEST_CASE("macro F1 is the mean of per-category F1") {
    std::array<MetricsReport, corpus::kCategoryCount> reports{};
    reports[0].f1 = 1.0;
    CHECK(macro_f1(reports) == doctest::Approx(1.0 / 7.0));
    for (auto& r : reports) r.f1 = 0.5;
    CHECK(macro_f1(reports) == doctest::Approx(0.5));
    CHECK_THROWS_AS(macro_f1(std::vector<MetricsReport>(3)), ValidationError);
}

TEST_CASE("macro F1 differs from the F1 of macro precision and recall") {
    const double p = 0.0251, r = 1.0;
    CHECK(harmonic_f1(p, r) * 100 == doctest::Approx(4.90).epsilon(1e-3));
}

TEST_CASE("multilabel report") {
    std::array<std::vector<bool>, corpus::kCategoryCount> y_true, y_pred;
    for (std::size_t c = 0; c < corpus::kCategoryCount; ++c) {
        y_true[c] = {true, false};
        y_pred[c] = c == 0 ? std::vector<bool>{true, false} : std::vector<bool>{false, false};
    }
    const auto r = multilabel_report(y_true, y_pred);
    CHECK(r.per_category[0].f1 == 1.0);
    CHECK(r.macro_f1 == doctest::Approx(1.0 / 7.0));
    CHECK(r.macro_precision == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("operating points") {
    CHECK(kPresetBinaryThreshold == 0.32);
    CHECK(kPresetCategoryThresholds == std::array<double, 7>{0.5, 0.31, 0.49, 0.27, 0.29, 0.21, 0.4});
}
