// pcl: command-line entry point for the PCL-detection pipeline.

#include "pcl/augment.hpp"
#include "pcl/config.hpp"
#include "pcl/corpus.hpp"
#include "pcl/ensemble.hpp"
#include "pcl/error.hpp"
#include "pcl/features.hpp"
#include "pcl/metrics.hpp"
#include "pcl/model.hpp"
#include "pcl/pipeline.hpp"
#include "pcl/report.hpp"
#include "pcl/text_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

using namespace pcl;
namespace fs = std::filesystem;

struct Overrides {
    std::optional<fs::path> config_file;
    std::vector<std::pair<std::string, std::string>> items;

    config::PipelineConfig load() const { return config::load(config_file, items); }
};

void option(CLI::App* app, Overrides& ov, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&ov, key](const std::string& v) { ov.items.emplace_back(key, v); }, help);
}

CLI::Option* flag_value(CLI::App* app, Overrides& ov, const std::string& flag, const std::string& key,
                        const std::string& value, const std::string& help) {
    return app->add_flag_callback(flag, [&ov, key, value] { ov.items.emplace_back(key, value); }, help);
}

void common_options(CLI::App* app, Overrides& ov) {
    app->add_option_function<std::string>(
        "--config", [&ov](const std::string& v) { ov.config_file = fs::path(v); }, "key = value config file")
        ->check(CLI::ExistingFile);
    option(app, ov, "--seed", "seed", "random seed (default 221)");
    option(app, ov, "--task", "task", "binary | multilabel");
}

void corpus_options(CLI::App* app, Overrides& ov) {
    option(app, ov, "--corpus", "corpus", "paragraph corpus TSV");
    option(app, ov, "--header", "corpus_header_lines", "lines to skip at the top of the corpus");
    option(app, ov, "--categories", "categories", "category span corpus TSV");
    option(app, ov, "--categories-header", "categories_header_lines", "lines to skip in the category corpus");
}

void split_options(CLI::App* app, Overrides& ov) {
    option(app, ov, "--split-file", "split_file", "id<TAB>split assignment file");
    option(app, ov, "--test-fraction", "test_fraction", "held-out fraction (default 0.2)");
    option(app, ov, "--validation-fraction", "validation_fraction", "validation fraction of the rest (default 0.15)");
}

void augment_options(CLI::App* app, Overrides& ov) {
    option(app, ov, "--translator", "translator", "none | identity | reverse | word-shuffle | http");
    option(app, ov, "--mt-url", "mt_url", "MT service URL (or PCL_MT_URL)");
    option(app, ov, "--mt-timeout-ms", "mt_timeout_ms", "MT request timeout");
    option(app, ov, "--mt-retries", "mt_retries", "MT retries after a failure");
    option(app, ov, "--policy", "augment_policy", "positives-only | all");
    flag_value(app, ov, "--no-dedup", "augment_dedup", "false", "keep back-translations identical to their source");
    option(app, ov, "--pivot", "pivot", "pivot language (default fr)");
    option(app, ov, "--concurrency", "augment_concurrency", "parallel translation requests");
    option(app, ov, "--cache", "translation_cache", "translation cache file");
}

void model_options(CLI::App* app, Overrides& ov) {
    option(app, ov, "--hash-dims", "hash_dims", "hashed vocabulary size");
    option(app, ov, "--learning-rate", "learning_rate", "initial learning rate");
    option(app, ov, "--linear-decay", "linear_decay", "true | false");
    option(app, ov, "--epochs", "epochs_max", "maximum epochs");
    option(app, ov, "--patience", "patience", "early-stopping patience");
    option(app, ov, "--l2", "l2", "L2 penalty");
    option(app, ov, "--batch-size", "batch_size", "mini-batch size (0 = full batch)");
    option(app, ov, "--target", "target", "soft-labels | hard-labels");
}

void align_options(CLI::App* app, Overrides& ov) {
    auto* strict = flag_value(app, ov, "--strict-align", "align", "strict", "members must share the id set (default)");
    auto* lenient = flag_value(app, ov, "--lenient-align", "align", "lenient", "intersect member id sets");
    strict->excludes(lenient);
}

void threshold_options(CLI::App* app, Overrides& ov) {
    option(app, ov, "--thresholds", "thresholds", "search | mid-of-plateau | preset:paper | value:<list>");
}

std::string short_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

pipeline::Dataset require_dataset(const config::PipelineConfig& cfg) {
    if (cfg.corpus.empty()) throw UsageError("no corpus given (use --corpus or 'corpus' in --config)");
    if (!fs::exists(cfg.corpus)) throw UsageError("corpus '" + cfg.corpus.string() + "' does not exist");
    if (cfg.task == config::Task::MultiLabel && cfg.categories.empty()) {
        throw UsageError("the multilabel task needs --categories");
    }
    return pipeline::load_dataset(cfg);
}

// Gold from --labels when given, otherwise from the corpus.
pipeline::GoldTable load_gold(const std::string& labels, const config::PipelineConfig& cfg,
                              std::optional<pipeline::Dataset>& dataset) {
    if (!labels.empty()) return pipeline::read_gold_file(labels);
    dataset = require_dataset(cfg);
    return pipeline::gold_from_dataset(cfg.task, *dataset);
}

// Ids of the requested split part, or every gold id without a split file.
std::vector<std::string> part_ids(const config::PipelineConfig& cfg, const pipeline::GoldTable& gold,
                                  const std::optional<pipeline::Dataset>& dataset, const std::string& part) {
    if (cfg.split_file.empty()) return gold.ids;
    const auto p = corpus::parse_split_part(part);
    if (!p) throw UsageError("unknown split part '" + part + "' (use train, validation or test)");
    std::vector<corpus::Paragraph> paragraphs;
    if (dataset) {
        paragraphs = dataset->corpus.paragraphs;
    } else {
        for (const auto& id : gold.ids) paragraphs.push_back(corpus::Paragraph{id});
    }
    return corpus::load_split_file(cfg.split_file, paragraphs).ids(*p);
}

std::vector<double> resolve_thresholds(const std::string& threshold_file, const config::PipelineConfig& cfg,
                                       const ensemble::ScoreMatrix& scores, const pipeline::GoldTable& gold,
                                       const std::optional<pipeline::Dataset>& dataset) {
    if (!threshold_file.empty()) return pipeline::read_thresholds(threshold_file);
    if (cfg.thresholds.kind == config::ThresholdPolicy::Kind::Search ||
        cfg.thresholds.kind == config::ThresholdPolicy::Kind::MidOfPlateau) {
        if (cfg.split_file.empty()) throw UsageError("threshold search needs --split-file (or pass --threshold-file)");
    }
    return pipeline::choose_thresholds(cfg.thresholds, scores, gold, part_ids(cfg, gold, dataset, "validation"))
        .thresholds;
}

int run_ingest(const Overrides& ov, const fs::path& out) {
    const auto cfg = ov.load();
    const auto ds = require_dataset(cfg);
    fs::create_directories(out);
    corpus::write_binary_corpus(out / "paragraphs.tsv", ds.corpus.paragraphs);
    corpus::write_text_export(out / "corpus_export.tsv", ds.corpus.paragraphs);
    pipeline::write_gold_file(out / "gold.tsv", pipeline::gold_from_dataset(config::Task::Binary, ds));
    if (!ds.categories.empty()) {
        corpus::write_category_labels(out / "categories.tsv", ds.categories);
        pipeline::write_gold_file(out / "gold_multilabel.tsv", pipeline::gold_from_dataset(config::Task::MultiLabel, ds));
    }
    std::size_t positives = 0;
    for (const auto& p : ds.corpus.paragraphs) positives += p.binary_label ? 1 : 0;
    std::cout << "paragraphs\t" << ds.corpus.paragraphs.size() << "\n"
              << "dropped_empty\t" << ds.corpus.dropped_empty << "\n"
              << "positives\t" << positives << "\n";
    if (!ds.categories.empty()) std::cout << "category_records\t" << ds.categories.size() << "\n";
    return 0;
}

int run_split(const Overrides& ov, const fs::path& out) {
    auto cfg = ov.load();
    cfg.split_file.clear();
    const auto ds = require_dataset(cfg);
    const auto split = pipeline::resolve_split(cfg, ds.corpus.paragraphs);
    corpus::write_split_file(out, split);
    std::cout << "train\t" << split.train_ids.size() << "\nvalidation\t" << split.validation_ids.size()
              << "\ntest\t" << split.test_ids.size() << "\n";
    return 0;
}

int run_featurize(const Overrides& ov, const fs::path& out) {
    const auto cfg = ov.load();
    const auto ds = require_dataset(cfg);
    std::vector<std::pair<std::string, features::FeatureVector>> rows;
    for (const auto& p : ds.corpus.paragraphs) rows.emplace_back(p.id, features::extract_features(p.text));
    features::write_feature_cache(out, rows);
    std::cout << "rows\t" << rows.size() << "\n";
    return 0;
}

int run_augment(const Overrides& ov, const fs::path& out) {
    const auto cfg = ov.load();
    if (cfg.translator == "none") throw UsageError("augment needs --translator");
    if (cfg.translator == "http" && cfg.mt_url.empty()) {
        throw UsageError("translator 'http' needs --mt-url or the PCL_MT_URL variable");
    }
    const auto ds = require_dataset(cfg);
    const auto split = pipeline::resolve_split(cfg, ds.corpus.paragraphs);
    auto inner = pipeline::make_translator(cfg);
    augment::CountingTranslator counting(*inner);
    const auto report = pipeline::augment_training(cfg, ds, split, counting);
    augment::write_augmented(out, report.samples, ds.corpus.paragraphs);
    for (const auto& f : report.failures) std::cerr << "warning: " << f.source_id << ": " << f.message << "\n";
    std::cout << "attempted\t" << report.attempted << "\nsamples\t" << report.samples.size() << "\ncache_hits\t"
              << report.cache_hits << "\nduplicates_dropped\t" << report.duplicates_dropped << "\nfailures\t"
              << report.failures.size() << "\ntranslator_calls\t" << counting.calls() << "\n";
    return 0;
}

int run_train(const Overrides& ov, const std::string& augmented, const fs::path& out) {
    const auto cfg = ov.load();
    model::validate(cfg.model);
    const auto ds = require_dataset(cfg);
    const auto split = pipeline::resolve_split(cfg, ds.corpus.paragraphs);
    std::vector<corpus::Paragraph> extra;
    if (!augmented.empty()) extra = pipeline::read_augmented(augmented);
    std::vector<std::string> warnings;
    const auto models = pipeline::train_models(cfg, ds, split, extra, warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    model::save_models(out, models);
    for (const auto& m : models) {
        std::cout << m.name << "\tbest_epoch " << m.best_epoch << "\tepochs_run " << m.epochs_run
                  << "\tvalidation_f1 " << short_number(m.validation_f1) << "\n";
    }
    return 0;
}

int run_score(const Overrides& ov, const fs::path& model_path, const std::string& model_id, const fs::path& out) {
    const auto cfg = ov.load();
    const auto ds = require_dataset(cfg);
    const auto models = model::load_models(model_path);
    const auto id = model_id.empty() ? out.stem().string() : model_id;
    ensemble::write_score_file(out, pipeline::score_corpus(models, ds, id));
    std::cout << "rows\t" << ds.corpus.paragraphs.size() << "\n";
    return 0;
}

int run_ensemble(const Overrides& ov, const std::vector<std::string>& inputs, const fs::path& out) {
    const auto cfg = ov.load();
    std::vector<ensemble::ScoreMatrix> members;
    for (const auto& path : inputs) members.push_back(ensemble::validate_score_file(path));
    const auto result = ensemble::average(members, cfg.alignment);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    ensemble::write_score_file(out, result.as_matrix(out.stem().string()));
    std::cout << "members\t" << result.member_models.size() << "\nrows\t" << result.ids.size() << "\n";
    return 0;
}

int run_tune(const Overrides& ov, const fs::path& scores_path, const std::string& labels, const std::string& part,
             const std::string& out) {
    const auto cfg = ov.load();
    std::optional<pipeline::Dataset> ds;
    const auto gold = load_gold(labels, cfg, ds);
    const auto scores = ensemble::validate_score_file(scores_path);
    const auto choice = pipeline::choose_thresholds(cfg.thresholds, scores, gold, part_ids(cfg, gold, ds, part));
    if (!out.empty()) {
        fs::create_directories(out);
        pipeline::write_thresholds(fs::path(out) / "thresholds.tsv", choice.thresholds);
        pipeline::emit_curves(choice, out);
    }
    for (std::size_t c = 0; c < choice.thresholds.size(); ++c) {
        const auto name = choice.thresholds.size() == 1 ? std::string("score") : "c" + std::to_string(c);
        std::cout << name << "\tbest " << short_number(choice.thresholds[c]) << "\tF1 "
                  << short_number(choice.searches[c].best_f1) << (choice.searches[c].fallback ? "\tfallback" : "")
                  << "\n";
    }
    return 0;
}

int run_evaluate(const Overrides& ov, const fs::path& scores_path, const std::string& labels,
                 const std::string& threshold_file, const std::string& part, const std::string& out) {
    const auto cfg = ov.load();
    std::optional<pipeline::Dataset> ds;
    const auto gold = load_gold(labels, cfg, ds);
    const auto scores = ensemble::validate_score_file(scores_path);
    const auto thresholds = resolve_thresholds(threshold_file, cfg, scores, gold, ds);
    const auto e = pipeline::evaluate(scores, gold, part_ids(cfg, gold, ds, part), thresholds);
    std::string table;
    if (scores.columns == 1) {
        table = report::format_metrics_table({{scores.model_id, e.per_column[0]}});
    } else {
        table = report::format_multilabel_table({{scores.model_id, e.multilabel}});
    }
    if (!out.empty()) io::write_file(out, table);
    std::cout << table;
    return 0;
}

int run_report(const Overrides& ov, const fs::path& system_path, const std::vector<std::string>& member_paths,
               const fs::path& baseline_path, const std::string& threshold_file, const fs::path& out) {
    const auto cfg = ov.load();
    if (cfg.split_file.empty()) throw UsageError("report needs --split-file");
    std::optional<pipeline::Dataset> ds(require_dataset(cfg));
    pipeline::ReportInputs in;
    in.gold = pipeline::gold_from_dataset(cfg.task, *ds);
    in.system = ensemble::validate_score_file(system_path);
    for (const auto& p : member_paths) in.members.push_back(ensemble::validate_score_file(p));
    in.baseline = ensemble::validate_score_file(baseline_path);
    in.thresholds = resolve_thresholds(threshold_file, cfg, in.system, in.gold, ds);
    in.dataset = &*ds;
    in.split = corpus::load_split_file(cfg.split_file, ds->corpus.paragraphs);
    fs::create_directories(out);
    const auto metrics = pipeline::emit_reports(in, out);

    std::map<std::string, fs::path> inputs{{"corpus", cfg.corpus}, {"split_file", cfg.split_file},
                                           {"system_scores", system_path}, {"baseline_scores", baseline_path}};
    if (!cfg.categories.empty()) inputs["categories"] = cfg.categories;
    std::vector<std::string> member_ids;
    for (std::size_t i = 0; i < in.members.size(); ++i) {
        inputs["member" + std::to_string(i + 1)] = member_paths[i];
        member_ids.push_back(in.members[i].model_id);
    }
    const auto run_id = cfg.run_id.empty() ? out.filename().string() : cfg.run_id;
    const auto manifest = pipeline::build_manifest(cfg, run_id, inputs, member_ids, in.thresholds, metrics);
    io::write_file(out / "manifest.toml", manifest.render());
    std::cout << "wrote\t" << out.string() << "\n";
    return 0;
}

int run_all(Overrides ov, const std::string& from_manifest) {
    config::PipelineConfig cfg;
    if (!from_manifest.empty()) {
        const auto manifest = report::RunManifest::parse(io::read_file(from_manifest), from_manifest);
        const auto mismatches = report::verify_manifest_inputs(manifest);
        for (const auto& m : mismatches) std::cerr << "warning: " << m << "\n";
        cfg = pipeline::config_from_manifest(manifest);
        for (const auto& [key, value] : ov.items) cfg.set(key, value);
    } else {
        cfg = ov.load();
    }
    const auto summary = pipeline::run_all(cfg);
    for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "run_id\t" << summary.run_id << "\nrun_dir\t" << summary.run_dir.string() << "\n";
    for (std::size_t c = 0; c < summary.thresholds.size(); ++c) {
        std::cout << "threshold\t" << (summary.thresholds.size() == 1 ? std::string("score") : "c" + std::to_string(c))
                  << "\t" << short_number(summary.thresholds[c]) << "\n";
    }
    for (const auto& [k, v] : summary.metrics) {
        if (k.rfind("test/ensemble.", 0) == 0) std::cout << k << "\t" << short_number(v) << "\n";
    }
    return 0;
}

int exit_code_for(pcl::ErrorKind kind) {
    switch (kind) {
    case pcl::ErrorKind::Usage: return 2;
    case pcl::ErrorKind::Parse: return 3;
    case pcl::ErrorKind::Validation: return 4;
    case pcl::ErrorKind::Consistency: return 5;
    case pcl::ErrorKind::Augmentation: return 6;
    case pcl::ErrorKind::Training: return 7;
    case pcl::ErrorKind::Io: return 8;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PCL detection pipeline"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "pcl 1.0.0");

    std::map<std::string, Overrides> ov;
    std::function<int()> action;

    std::string out;
    auto add = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        common_options(sub, ov[name]);
        return sub;
    };

    auto* ingest = add("ingest", "parse and validate corpora; export id<TAB>text for external scorers");
    corpus_options(ingest, ov["ingest"]);
    ingest->add_option("--out", out, "output directory")->required();
    ingest->callback([&] { action = [&] { return run_ingest(ov["ingest"], out); }; });

    auto* split = add("split", "seeded train/validation/test split");
    corpus_options(split, ov["split"]);
    option(split, ov["split"], "--test-fraction", "test_fraction", "held-out fraction (default 0.2)");
    option(split, ov["split"], "--validation-fraction", "validation_fraction", "validation fraction (default 0.15)");
    split->add_option("--out", out, "split file to write")->required();
    split->callback([&] { action = [&] { return run_split(ov["split"], out); }; });

    auto* featurize = add("featurize", "extract the twelve linguistic features");
    corpus_options(featurize, ov["featurize"]);
    featurize->add_option("--out", out, "feature cache to write")->required();
    featurize->callback([&] { action = [&] { return run_featurize(ov["featurize"], out); }; });

    auto* augment = add("augment", "back-translate training paragraphs");
    corpus_options(augment, ov["augment"]);
    split_options(augment, ov["augment"]);
    augment_options(augment, ov["augment"]);
    augment->add_option("--out", out, "augmented corpus to write")->required();
    augment->callback([&] { action = [&] { return run_augment(ov["augment"], out); }; });

    std::string augmented;
    auto* train = add("train", "train the linear baseline");
    corpus_options(train, ov["train"]);
    split_options(train, ov["train"]);
    model_options(train, ov["train"]);
    train->add_option("--augmented", augmented, "augmented corpus to add to training")->check(CLI::ExistingFile);
    train->add_option("--out", out, "model file to write")->required();
    train->callback([&] { action = [&] { return run_train(ov["train"], augmented, out); }; });

    std::string model_path;
    std::string model_id;
    auto* score = add("score", "score every corpus paragraph with a trained model");
    corpus_options(score, ov["score"]);
    score->add_option("--model", model_path, "model file")->required()->check(CLI::ExistingFile);
    score->add_option("--model-id", model_id, "model id (default: output file stem)");
    score->add_option("--out", out, "score file to write")->required();
    score->callback([&] { action = [&] { return run_score(ov["score"], model_path, model_id, out); }; });

    std::vector<std::string> members;
    auto* ens = add("ensemble", "average member score files");
    align_options(ens, ov["ensemble"]);
    ens->add_option("members", members, "member score files")->required()->check(CLI::ExistingFile);
    ens->add_option("--out", out, "ensemble score file to write")->required();
    ens->callback([&] { action = [&] { return run_ensemble(ov["ensemble"], members, out); }; });

    std::string scores;
    std::string labels;
    // Each subcommand binds its own --part: default_val writes into the variable.
    std::string tune_part;
    std::string eval_part;
    std::string threshold_file;
    auto* tune = add("tune-threshold", "pick decision thresholds on validation scores");
    corpus_options(tune, ov["tune-threshold"]);
    option(tune, ov["tune-threshold"], "--split-file", "split_file", "split file (default: use every labelled id)");
    threshold_options(tune, ov["tune-threshold"]);
    tune->add_option("--scores", scores, "score file")->required()->check(CLI::ExistingFile);
    tune->add_option("--labels", labels, "gold labels (id<TAB>label or id<TAB>c0..c6)")->check(CLI::ExistingFile);
    tune->add_option("--part", tune_part, "split part to tune on")->default_val("validation");
    tune->add_option("--out", out, "directory for thresholds.tsv and curves");
    tune->callback([&] { action = [&] { return run_tune(ov["tune-threshold"], scores, labels, tune_part, out); }; });

    auto* evaluate = add("evaluate", "precision, recall and F1 at given thresholds");
    corpus_options(evaluate, ov["evaluate"]);
    option(evaluate, ov["evaluate"], "--split-file", "split_file", "split file (default: use every labelled id)");
    threshold_options(evaluate, ov["evaluate"]);
    evaluate->add_option("--scores", scores, "score file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--labels", labels, "gold labels")->check(CLI::ExistingFile);
    evaluate->add_option("--threshold-file", threshold_file, "thresholds.tsv from tune-threshold")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--part", eval_part, "split part to evaluate")->default_val("test");
    evaluate->add_option("--out", out, "metrics table to write");
    evaluate->callback([&] {
        action = [&] { return run_evaluate(ov["evaluate"], scores, labels, threshold_file, eval_part, out); };
    });

    std::string system;
    std::string baseline;
    std::vector<std::string> report_members;
    auto* rep = add("report", "metric tables, error analysis and manifest");
    corpus_options(rep, ov["report"]);
    option(rep, ov["report"], "--split-file", "split_file", "split file");
    threshold_options(rep, ov["report"]);
    rep->add_option("--system", system, "system (ensemble) score file")->required()->check(CLI::ExistingFile);
    rep->add_option("--members", report_members, "member score files, reported at 0.5")->check(CLI::ExistingFile);
    rep->add_option("--baseline", baseline, "baseline score file for error analysis")
        ->required()
        ->check(CLI::ExistingFile);
    rep->add_option("--threshold-file", threshold_file, "thresholds.tsv from tune-threshold")
        ->check(CLI::ExistingFile);
    rep->add_option("--out", out, "output directory")->required();
    rep->callback([&] {
        action = [&] { return run_report(ov["report"], system, report_members, baseline, threshold_file, out); };
    });

    std::string from_manifest;
    auto* all = add("run-all", "ingest, split, augment, train, score, ensemble, tune and report in one run");
    auto& all_ov = ov["run-all"];
    corpus_options(all, all_ov);
    split_options(all, all_ov);
    augment_options(all, all_ov);
    model_options(all, all_ov);
    align_options(all, all_ov);
    threshold_options(all, all_ov);
    option(all, all_ov, "--members", "members", "comma-separated extra member score files");
    option(all, all_ov, "--baseline", "baseline_scores", "baseline score file for error analysis");
    option(all, all_ov, "--out", "out", "runs directory (default runs)");
    option(all, all_ov, "--run-id", "run_id", "run id (default: derived from config and inputs)");
    all->add_option("--from-manifest", from_manifest, "re-run the configuration recorded in a manifest")
        ->check(CLI::ExistingFile);
    all->callback([&] { action = [&] { return run_all(all_ov, from_manifest); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const pcl::Error& e) {
        std::cerr << "error [" << pcl::to_string(e.kind()) << "]: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
