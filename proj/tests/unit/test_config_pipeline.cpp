#include "doctest.h"

#include "pcl/config.hpp"
#include "pcl/error.hpp"
#include "pcl/pipeline.hpp"
#include "pcl/text_io.hpp"
#include "synthetic.hpp"

#include <cstdlib>

using namespace pcl;
using namespace pcl::config;

namespace {

PipelineConfig synthetic_config(const std::filesystem::path& dir, Task task = Task::Binary) {
    const auto files = testing::write_synthetic(dir);
    PipelineConfig c;
    c.task = task;
    c.corpus = files.corpus;
    c.categories = files.categories;
    c.out = dir / "runs";
    return c;
}

}  // namespace

TEST_CASE("threshold policy parsing") {
    CHECK(ThresholdPolicy::parse("search").kind == ThresholdPolicy::Kind::Search);
    CHECK(ThresholdPolicy::parse("mid-of-plateau").kind == ThresholdPolicy::Kind::MidOfPlateau);
    CHECK(ThresholdPolicy::parse("preset:paper").kind == ThresholdPolicy::Kind::Preset);
    const auto v = ThresholdPolicy::parse("value:0.3");
    CHECK(v.kind == ThresholdPolicy::Kind::Values);
    CHECK(v.values == std::vector<double>{0.3});
    CHECK(ThresholdPolicy::parse(v.render()).values == v.values);
    CHECK(ThresholdPolicy::parse("value:0.1,0.2,0.3,0.4,0.5,0.6,0.7").values.size() == 7);
    CHECK_THROWS_AS(ThresholdPolicy::parse("value:1.2"), UsageError);
    CHECK_THROWS_AS(ThresholdPolicy::parse("value:0.1,0.2"), UsageError);
    CHECK_THROWS_AS(ThresholdPolicy::parse("best"), UsageError);
}

TEST_CASE("config keys") {
    PipelineConfig c;
    c.set("seed", "7");
    CHECK(c.seed == 7);
    CHECK(c.model.seed == 7);
    c.set("task", "multilabel");
    CHECK(c.task == Task::MultiLabel);
    c.set("align", "lenient");
    CHECK(c.alignment == ensemble::Alignment::Lenient);
    c.set("hash_dims", "1024");
    CHECK(c.model.hash_dims == 1024);
    c.set("augment_dedup", "false");
    CHECK_FALSE(c.augment_dedup);
    CHECK_THROWS_AS(c.set("colour", "red"), UsageError);
    CHECK_THROWS_AS(c.set("seed", "many"), UsageError);
    CHECK_THROWS_AS(c.set("translator", "babel"), UsageError);
    const auto snap = c.snapshot();
    CHECK(snap.at("seed") == "7");
    CHECK(snap.at("task") == "multilabel");
}

TEST_CASE("config file and overrides") {
    const auto dir = testing::scratch_dir("config_file");
    io::write_file(dir / "run.toml", "# comment\n[run]\nseed = 5\npivot = \"de\"  # trailing\nlearning_rate = 0.05\n");
    const auto values = read_config_file(dir / "run.toml");
    CHECK(values.at("pivot") == "de");
    const auto c = load(dir / "run.toml", {{"seed", "9"}});
    CHECK(c.seed == 9);
    CHECK(c.pivot == "de");
    CHECK(c.model.learning_rate == 0.05);
    io::write_file(dir / "bad.toml", "novalue\n");
    CHECK_THROWS_AS(read_config_file(dir / "bad.toml"), ParseError);
}

TEST_CASE("config validation") {
    const auto dir = testing::scratch_dir("config_validate");
    PipelineConfig c;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = synthetic_config(dir);
    CHECK_NOTHROW(c.validate());
    c.translator = "http";
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = synthetic_config(dir, Task::MultiLabel);
    c.categories.clear();
    CHECK_THROWS_AS(c.validate(), UsageError);
    c = synthetic_config(dir, Task::MultiLabel);
    c.thresholds = ThresholdPolicy::parse("value:0.4");
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.corpus = dir / "missing.tsv";
    CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("gold and threshold files round-trip") {
    const auto dir = testing::scratch_dir("gold_files");
    io::write_file(dir / "labels.tsv", "id\tlabel\na\t1\nb\t0\n");
    const auto gold = pipeline::read_gold_file(dir / "labels.tsv");
    CHECK(gold.columns == 1);
    CHECK(gold.at("a") == std::vector<bool>{true});
    pipeline::write_gold_file(dir / "back.tsv", gold);
    CHECK(pipeline::read_gold_file(dir / "back.tsv").labels == gold.labels);
    io::write_file(dir / "bad.tsv", "a\t2\n");
    CHECK_THROWS(pipeline::read_gold_file(dir / "bad.tsv"));

    pipeline::write_thresholds(dir / "t.tsv", {0.5, 0.31, 0.49, 0.27, 0.29, 0.21, 0.4});
    CHECK(pipeline::read_thresholds(dir / "t.tsv") == std::vector<double>{0.5, 0.31, 0.49, 0.27, 0.29, 0.21, 0.4});
}

TEST_CASE("preset thresholds override the search") {
    ensemble::ScoreMatrix scores;
    scores.ids = {"a", "b", "c", "d"};
    scores.scores = {0.9, 0.8, 0.7, 0.1};
    pipeline::GoldTable gold;
    gold.ids = scores.ids;
    gold.labels = {{"a", {true}}, {"b", {false}}, {"c", {true}}, {"d", {false}}};
    const auto searched = pipeline::choose_thresholds(ThresholdPolicy{}, scores, gold, scores.ids);
    CHECK(searched.thresholds == std::vector<double>{0.7});
    const auto preset = pipeline::choose_thresholds(ThresholdPolicy::parse("preset:paper"), scores, gold, scores.ids);
    CHECK(preset.thresholds == std::vector<double>{0.32});
    CHECK(preset.searches[0].best_threshold == 0.32);
    const auto eval = pipeline::evaluate(scores, gold, scores.ids, searched.thresholds);
    CHECK(eval.per_column[0].f1 == doctest::Approx(0.8));
}

TEST_CASE("run_all on the synthetic corpus") {
    const auto dir = testing::scratch_dir("run_all_binary");
    auto c = synthetic_config(dir);
    const auto summary = pipeline::run_all(c);
    for (const char* name : {"split.tsv", "gold.tsv", "corpus_export.tsv", "model.txt", "scores/linear.tsv",
                             "scores/ensemble.tsv", "thresholds.tsv", "curve.tsv", "curve.svg", "metrics.tsv",
                             "errors.md", "manifest.toml"}) {
        CHECK_MESSAGE(std::filesystem::exists(summary.run_dir / name), name);
    }
    CHECK(summary.metrics.at("test/ensemble.f1") >= 0.9);
    CHECK(summary.thresholds.size() == 1);

    const auto manifest = report::RunManifest::parse(io::read_file(summary.run_dir / "manifest.toml"), "m");
    CHECK(report::verify_manifest_inputs(manifest).empty());
    const auto again = pipeline::config_from_manifest(manifest);
    CHECK(again.snapshot() == c.snapshot());
    CHECK(pipeline::default_run_id(again) == summary.run_id);

    c.run_id = "repeat";
    const auto second = pipeline::run_all(c);
    CHECK(io::read_file(second.run_dir / "metrics.tsv") == io::read_file(summary.run_dir / "metrics.tsv"));
    CHECK(io::read_file(second.run_dir / "scores/ensemble.tsv") ==
          io::read_file(summary.run_dir / "scores/ensemble.tsv"));
}

TEST_CASE("run_all with augmentation keeps held-out parts untouched") {
    const auto dir = testing::scratch_dir("run_all_augment");
    auto c = synthetic_config(dir);
    c.translator = "word-shuffle";
    const auto summary = pipeline::run_all(c);
    CHECK_FALSE(summary.augmentation.samples.empty());
    const auto split = corpus::load_split_file(summary.run_dir / "split.tsv",
                                               corpus::parse_binary_corpus(c.corpus).paragraphs);
    for (const auto& s : summary.augmentation.samples) {
        CHECK(std::find(split.train_ids.begin(), split.train_ids.end(), s.source_id) != split.train_ids.end());
    }
}

TEST_CASE("multilabel run_all with the preset thresholds") {
    const auto dir = testing::scratch_dir("run_all_multilabel");
    auto c = synthetic_config(dir, Task::MultiLabel);
    c.thresholds = ThresholdPolicy::parse("preset:paper");
    const auto summary = pipeline::run_all(c);
    REQUIRE(summary.thresholds.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) CHECK(summary.thresholds[k] == metrics::kPresetCategoryThresholds[k]);
    CHECK(summary.metrics.count("test/ensemble.macro_f1") == 1);
    // Categories with no validation positives have no curve to draw.
    std::size_t curves = 0;
    for (std::size_t k = 0; k < 7; ++k) curves += std::filesystem::exists(summary.run_dir / ("curve_c" + std::to_string(k) + ".tsv"));
    CHECK(curves >= 1);
    CHECK_FALSE(std::filesystem::exists(summary.run_dir / "curve.tsv"));
}

TEST_CASE("MT URL from the environment") {
    const auto dir = testing::scratch_dir("config_env");
    ::setenv(kMtUrlEnv, "http://127.0.0.1:9/translate", 1);
    const auto c = load(std::nullopt, {});
    ::unsetenv(kMtUrlEnv);
    CHECK(c.mt_url == "http://127.0.0.1:9/translate");
}
