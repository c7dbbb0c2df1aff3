#include "doctest.h"

#include "pcl/error.hpp"
#include "pcl/report.hpp"
#include "pcl/text_io.hpp"
#include "synthetic.hpp"

using namespace pcl;
using namespace pcl::report;

namespace {

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("bucket of every gold/baseline/system combination") {
    CHECK(bucket_of(true, true, true) == Bucket::BothCorrect);
    CHECK(bucket_of(true, false, true) == Bucket::SystemFixed);
    CHECK(bucket_of(false, false, true) == Bucket::SystemBroke);
    CHECK(bucket_of(true, false, false) == Bucket::BothWrong);
    CHECK(bucket_of(false, true, true) == Bucket::BothWrong);
}

TEST_CASE("buckets partition the gold ids") {
    std::vector<GoldItem> gold;
    std::vector<Prediction> baseline, system;
    for (int i = 0; i < 16; ++i) {
        const auto id = "p" + std::to_string(i);
        gold.push_back({id, "text " + id, (i & 1) != 0, {}});
        baseline.push_back({id, (i & 2) != 0});
        system.push_back({id, (i & 4) != 0});
    }
    const auto rows = compare_systems(gold, baseline, system);
    REQUIRE(rows.size() == gold.size());
    std::map<Bucket, int> counts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].id == gold[i].id);
        ++counts[rows[i].bucket];
        CHECK((rows[i].kind == report::ErrorKind::None) == (rows[i].bucket == Bucket::BothCorrect));
    }
    int total = 0;
    for (const auto& [b, n] : counts) total += n;
    CHECK(total == 16);
    CHECK(counts[Bucket::BothCorrect] == 4);
    CHECK(counts[Bucket::SystemFixed] == 4);
    CHECK(counts[Bucket::SystemBroke] == 4);
    CHECK(counts[Bucket::BothWrong] == 4);
}

TEST_CASE("compare_systems needs identical id sets") {
    std::vector<GoldItem> gold = {{"a", "x", true, {}}, {"b", "y", false, {}}};
    CHECK_THROWS_AS(compare_systems(gold, {{"a", true}}, {{"a", true}, {"b", false}}), ConsistencyError);
    CHECK_THROWS_AS(compare_systems(gold, {{"a", true}, {"c", true}}, {{"a", true}, {"b", false}}),
                    ConsistencyError);
    CHECK_THROWS_AS(compare_systems(gold, {{"a", true}, {"a", true}}, {{"a", true}, {"b", false}}),
                    ConsistencyError);
}

TEST_CASE("error analysis listing") {
    corpus::CategoryVector cats{};
    cats[5] = true;
    std::vector<GoldItem> gold = {{"a", "pipe | here", true, cats}, {"b", "fine", false, {}}};
    const auto rows = compare_systems(gold, {{"a", false}, {"b", false}}, {{"a", true}, {"b", false}});
    const auto md = format_error_analysis(rows);
    CHECK(contains(md, "| system-fixed | 1 |"));
    CHECK(contains(md, "| both-correct | 1 |"));
    CHECK(contains(md, "## system-fixed, false-negative"));
    CHECK(contains(md, "| a | pipe \\| here | pos. | neg. | pos. | compassion |"));
}

TEST_CASE("curve with four points marks the chosen one") {
    const auto r = metrics::find_best_threshold({{true, false, true, false}, {0.9, 0.8, 0.7, 0.1}});
    const auto tsv = format_curve_tsv(r);
    CHECK(io::split_tabs(tsv).size() > 1);
    CHECK(contains(tsv, "threshold\tf1\n"));
    CHECK(contains(tsv, "0.700000000\t0.800000000\n"));
    const auto svg = render_curve_svg(r);
    CHECK(contains(svg, "best threshold 0.7000, F1 0.8000"));
    CHECK(contains(svg, "<polyline"));
}

TEST_CASE("curve files") {
    const auto dir = testing::scratch_dir("curve");
    const auto one = metrics::find_best_threshold({{true}, {0.4}});
    emit_threshold_curve(one, {dir / "c.tsv", dir / "c.svg"});
    CHECK(io::read_lines(dir / "c.tsv").size() == 2);
    CHECK(std::filesystem::exists(dir / "c.svg"));
    CHECK_THROWS_AS(emit_threshold_curve(metrics::ThresholdSearchResult{}, {dir / "e.tsv", dir / "e.svg"}),
                    ValidationError);
}

TEST_CASE("metrics table renders percentages") {
    const auto table =
        format_metrics_table({{"Model 2", metrics::MetricsReport::from_precision_recall(0.6595, 0.5585)}});
    CHECK(table == "system\tP\tR\tF1\nModel 2\t65.95\t55.85\t60.48\n");
    CHECK(format_metrics_table({}) == "system\tP\tR\tF1\n");
    CHECK(format_percent(0.5) == "50.00");
}

TEST_CASE("multilabel table has a macro column and seven category columns") {
    metrics::MultiLabelReport r;
    r.per_category[0].f1 = 1.0;
    r.macro_f1 = 1.0 / 7.0;
    const auto table = format_multilabel_table({{"sys", r}});
    const auto lines = io::split_tabs(table.substr(0, table.find('\n')));
    REQUIRE(lines.size() == 11);
    CHECK(lines[3] == "macro_F1");
    CHECK(contains(table, "sys\t0.00\t0.00\t14.29\t100.00\t0.00"));
}

TEST_CASE("manifest round-trips and verifies checksums") {
    const auto dir = testing::scratch_dir("manifest");
    io::write_file(dir / "in.tsv", "data\n");
    RunManifest m;
    m.set("run_id", "abc");
    m.set("note", "quote \" tab\t end");
    m.set_number("threshold.score", 0.32);
    m.set_integer("seed", 221);
    m.set("input.corpus", (dir / "in.tsv").string());
    m.set("checksum.corpus", file_checksum(dir / "in.tsv"));
    const auto text = m.render();
    CHECK(contains(text, "seed = 221\n"));
    CHECK(contains(text, "threshold.score = 0.32\n"));
    const auto back = RunManifest::parse(text, "manifest");
    CHECK(back.values == m.values);
    CHECK(back.get("note") == "quote \" tab\t end");
    CHECK(back.render() == text);
    CHECK(verify_manifest_inputs(back).empty());
    io::write_file(dir / "in.tsv", "changed\n");
    CHECK(verify_manifest_inputs(back).size() == 1);
    CHECK_THROWS_AS(RunManifest::parse("just words\n", "m"), ParseError);
    CHECK(file_checksum(dir / "in.tsv").rfind("fnv1a64:", 0) == 0);
}
