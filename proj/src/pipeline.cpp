#include "pcl/pipeline.hpp"

#include "pcl/error.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <unordered_set>

namespace pcl::pipeline {

namespace {

std::string column_name(std::size_t columns, std::size_t c) {
    return columns == 1 ? std::string("score") : "c" + std::to_string(c);
}

std::unordered_map<std::string, std::size_t> row_index(const ensemble::ScoreMatrix& scores) {
    std::unordered_map<std::string, std::size_t> rows;
    rows.reserve(scores.ids.size());
    for (std::size_t i = 0; i < scores.ids.size(); ++i) rows.emplace(scores.ids[i], i);
    return rows;
}

std::size_t find_row(const std::unordered_map<std::string, std::size_t>& rows, const std::string& id,
                     const std::string& model_id) {
    const auto it = rows.find(id);
    if (it == rows.end()) throw ConsistencyError("score file '" + model_id + "' has no row for id '" + id + "'");
    return it->second;
}

std::string source_of_augmented(const std::string& id) {
    const auto pos = id.rfind("~bt-");
    return pos == std::string::npos ? id : id.substr(0, pos);
}

std::vector<std::string> present_ids(const std::vector<std::string>& ids, const ensemble::ScoreMatrix& scores) {
    const std::unordered_set<std::string> have(scores.ids.begin(), scores.ids.end());
    std::vector<std::string> out;
    for (const auto& id : ids) {
        if (have.count(id)) out.push_back(id);
    }
    return out;
}

model::TrainedModel constant_model(const std::vector<model::Sample>& train_set, const model::ModelConfig& config,
                                   double bias) {
    model::TrainedModel m;
    m.config = config;
    m.normalizer = model::Normalizer::fit(train_set);
    m.weights.assign(model::weight_count(config.hash_dims), 0.0);
    m.weights.back() = bias;
    return m;
}

bool has_both_classes(const std::vector<model::Sample>& samples) {
    bool pos = false;
    bool neg = false;
    for (const auto& s : samples) (s.soft_label >= 0.5 ? pos : neg) = true;
    return pos && neg;
}

}  // namespace

Dataset load_dataset(const config::PipelineConfig& config) {
    Dataset d;
    d.corpus = corpus::parse_binary_corpus(config.corpus, {config.corpus_header_lines});
    if (!config.categories.empty()) {
        const auto records =
            corpus::parse_category_corpus(config.categories, d.corpus.paragraphs, {config.categories_header_lines});
        d.categories = corpus::expand_multilabel_with_negatives(records, d.corpus.paragraphs);
    }
    return d;
}

corpus::SplitAssignment resolve_split(const config::PipelineConfig& config,
                                      const std::vector<corpus::Paragraph>& paragraphs) {
    auto split = config.split_file.empty()
                     ? corpus::make_split(paragraphs, config.seed, config.test_fraction, config.validation_fraction)
                     : corpus::load_split_file(config.split_file, paragraphs);
    corpus::validate_partition(split, paragraphs);
    return split;
}

const std::vector<bool>& GoldTable::at(const std::string& id) const {
    const auto it = labels.find(id);
    if (it == labels.end()) throw ConsistencyError("no gold label for id '" + id + "'");
    return it->second;
}

GoldTable gold_from_dataset(config::Task task, const Dataset& dataset) {
    GoldTable gold;
    if (task == config::Task::Binary) {
        gold.columns = 1;
        for (const auto& p : dataset.corpus.paragraphs) {
            gold.ids.push_back(p.id);
            gold.labels[p.id] = {p.binary_label};
        }
        return gold;
    }
    if (dataset.categories.empty()) throw UsageError("the multilabel task needs a category corpus");
    gold.columns = corpus::kCategoryCount;
    for (const auto& r : dataset.categories) {
        gold.ids.push_back(r.paragraph_id);
        gold.labels[r.paragraph_id] = std::vector<bool>(r.labels.begin(), r.labels.end());
    }
    return gold;
}

GoldTable read_gold_file(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    GoldTable gold;
    gold.columns = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cells = io::split_tabs(lines[i]);
        if (i == 0 && cells[0] == "id") continue;
        if (cells.size() != 2 && cells.size() != corpus::kCategoryCount + 1) {
            throw ParseError(path.string(), i + 1, "expected 2 or 8 columns, found " + std::to_string(cells.size()));
        }
        if (gold.columns == 0) gold.columns = cells.size() - 1;
        if (cells.size() - 1 != gold.columns) throw ParseError(path.string(), i + 1, "ragged row");
        std::vector<bool> row;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (cells[c] != "0" && cells[c] != "1") {
                throw ParseError(path.string(), i + 1, "label '" + std::string(cells[c]) + "' must be 0 or 1");
            }
            row.push_back(cells[c] == "1");
        }
        if (!gold.labels.emplace(std::string(cells[0]), std::move(row)).second) {
            throw ParseError(path.string(), i + 1, "duplicate id '" + std::string(cells[0]) + "'");
        }
        gold.ids.emplace_back(cells[0]);
    }
    if (gold.ids.empty()) throw ValidationError(path.string() + ": no gold labels");
    return gold;
}

void write_gold_file(const std::filesystem::path& path, const GoldTable& gold) {
    std::string out = "id";
    for (std::size_t c = 0; c < gold.columns; ++c) out += "\t" + (gold.columns == 1 ? std::string("label") : column_name(gold.columns, c));
    out += '\n';
    for (const auto& id : gold.ids) {
        out += id;
        for (bool v : gold.at(id)) out += v ? "\t1" : "\t0";
        out += '\n';
    }
    io::write_file(path, out);
}

std::unique_ptr<augment::Translator> make_translator(const config::PipelineConfig& config) {
    if (config.translator == "identity") return std::make_unique<augment::IdentityTranslator>();
    if (config.translator == "reverse") return std::make_unique<augment::ReversingTranslator>();
    if (config.translator == "word-shuffle") return std::make_unique<augment::WordShuffleTranslator>();
    if (config.translator == "http") {
        augment::HttpTranslatorOptions options;
        options.url = config.mt_url;
        options.timeout = std::chrono::milliseconds(config.mt_timeout_ms);
        options.retries = config.mt_retries;
        return std::make_unique<augment::HttpTranslator>(options);
    }
    throw UsageError("no translator configured (set --translator)");
}

augment::AugmentReport augment_training(const config::PipelineConfig& config, const Dataset& dataset,
                                        const corpus::SplitAssignment& split, augment::Translator& translator) {
    const std::unordered_set<std::string> train(split.train_ids.begin(), split.train_ids.end());
    std::vector<corpus::Paragraph> sources;
    for (const auto& p : dataset.corpus.paragraphs) {
        if (train.count(p.id)) sources.push_back(p);
    }
    augment::AugmentOptions options;
    options.policy = config.augment_policy;
    options.dedup = config.augment_dedup;
    options.pivot = config.pivot;
    options.max_concurrency = config.augment_concurrency;
    augment::TranslationCache cache = config.translation_cache.empty()
                                          ? augment::TranslationCache()
                                          : augment::TranslationCache(config.translation_cache);
    return augment::augment_corpus(sources, translator, options, cache);
}

std::vector<corpus::Paragraph> read_augmented(const std::filesystem::path& path) {
    return corpus::parse_binary_corpus(path).paragraphs;
}

std::vector<model::TrainedModel> train_models(const config::PipelineConfig& config, const Dataset& dataset,
                                              const corpus::SplitAssignment& split,
                                              const std::vector<corpus::Paragraph>& augmented,
                                              std::vector<std::string>& warnings) {
    std::unordered_map<std::string, const corpus::Paragraph*> by_id;
    for (const auto& p : dataset.corpus.paragraphs) by_id.emplace(p.id, &p);
    auto sample_of = [&](const std::string& id) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw ConsistencyError("split id '" + id + "' is not in the corpus");
        return model::make_sample(id, it->second->text, it->second->soft_label);
    };

    std::vector<model::Sample> train_set;
    std::vector<model::Sample> validation_set;
    for (const auto& id : split.train_ids) train_set.push_back(sample_of(id));
    for (const auto& p : augmented) {
        if (!by_id.count(source_of_augmented(p.id))) {
            throw ConsistencyError("augmented sample '" + p.id + "' has no source paragraph in the corpus");
        }
        train_set.push_back(model::make_sample(p.id, p.text, p.soft_label));
    }
    for (const auto& id : split.validation_ids) validation_set.push_back(sample_of(id));

    if (config.task == config::Task::Binary) {
        auto m = model::train(train_set, validation_set, config.model);
        return {std::move(m)};
    }

    std::unordered_map<std::string, const corpus::CategoryVector*> labels;
    for (const auto& r : dataset.categories) labels.emplace(r.paragraph_id, &r.labels);
    auto label_of = [&](const std::string& id, std::size_t c) {
        const auto it = labels.find(source_of_augmented(id));
        if (it == labels.end()) throw ConsistencyError("no category labels for id '" + id + "'");
        return (*it->second)[c] ? 1.0 : 0.0;
    };

    model::ModelConfig mc = config.model;
    mc.target = model::Target::HardLabels;
    std::vector<model::TrainedModel> models;
    for (std::size_t c = 0; c < corpus::kCategoryCount; ++c) {
        auto tr = train_set;
        auto va = validation_set;
        for (auto& s : tr) s.soft_label = label_of(s.id, c);
        for (auto& s : va) s.soft_label = label_of(s.id, c);
        const std::string name = "c" + std::to_string(c);
        if (!has_both_classes(tr)) {
            warnings.push_back("category " + name + ": training part has a single class; using a constant model");
            const bool positive = !tr.empty() && tr.front().soft_label >= 0.5;
            models.push_back(constant_model(tr, mc, positive ? 10.0 : -10.0));
        } else if (!has_both_classes(va)) {
            warnings.push_back("category " + name + ": validation part has a single class; selecting on training F1");
            models.push_back(model::train(tr, tr, mc));
        } else {
            models.push_back(model::train(tr, va, mc));
        }
        models.back().name = "linear-" + name;
    }
    return models;
}

ensemble::ScoreMatrix score_corpus(const std::vector<model::TrainedModel>& models, const Dataset& dataset,
                                   const std::string& model_id) {
    std::vector<model::Sample> samples;
    samples.reserve(dataset.corpus.paragraphs.size());
    for (const auto& p : dataset.corpus.paragraphs) samples.push_back(model::make_sample(p.id, p.text, p.soft_label));
    return model::score_samples(models, samples, model_id);
}

std::vector<metrics::LabeledScores> labeled_columns(const ensemble::ScoreMatrix& scores, const GoldTable& gold,
                                                    const std::vector<std::string>& ids) {
    if (scores.columns != gold.columns) {
        throw ConsistencyError("score file '" + scores.model_id + "' has " + std::to_string(scores.columns) +
                               " column(s) but the gold labels have " + std::to_string(gold.columns));
    }
    const auto rows = row_index(scores);
    std::vector<metrics::LabeledScores> out(scores.columns);
    for (const auto& id : ids) {
        const auto r = find_row(rows, id, scores.model_id);
        const auto& g = gold.at(id);
        for (std::size_t c = 0; c < scores.columns; ++c) {
            out[c].y_true.push_back(g[c]);
            out[c].y_out.push_back(scores.at(r, c));
        }
    }
    return out;
}

ThresholdChoice choose_thresholds(const config::ThresholdPolicy& policy, const ensemble::ScoreMatrix& scores,
                                  const GoldTable& gold, const std::vector<std::string>& validation_ids) {
    using Kind = config::ThresholdPolicy::Kind;
    const auto data = labeled_columns(scores, gold, validation_ids);
    const auto mode =
        policy.kind == Kind::MidOfPlateau ? metrics::SearchMode::MidOfPlateau : metrics::SearchMode::BestCandidate;
    if (policy.kind == Kind::Values && policy.values.size() != scores.columns) {
        throw UsageError("--thresholds value: lists " + std::to_string(policy.values.size()) +
                         " threshold(s) for " + std::to_string(scores.columns) + " score column(s)");
    }

    ThresholdChoice choice;
    for (std::size_t c = 0; c < scores.columns; ++c) {
        metrics::ThresholdSearchResult result;
        const bool any_positive = std::find(data[c].y_true.begin(), data[c].y_true.end(), true) != data[c].y_true.end();
        if (any_positive) {
            result = metrics::find_best_threshold(data[c], mode);
        } else {
            result.fallback = true;
        }
        double applied = result.best_threshold;
        if (policy.kind == Kind::Preset) {
            applied = scores.columns == 1 ? metrics::kPresetBinaryThreshold : metrics::kPresetCategoryThresholds[c];
        } else if (policy.kind == Kind::Values) {
            applied = policy.values[c];
        }
        if (applied != result.best_threshold) {
            result.best_threshold = applied;
            result.best_f1 = metrics::f1_score(data[c].y_true, metrics::binarize(data[c].y_out, applied)).f1;
        }
        choice.thresholds.push_back(applied);
        choice.searches.push_back(std::move(result));
    }
    return choice;
}

void write_thresholds(const std::filesystem::path& path, const std::vector<double>& thresholds) {
    std::string out = "column\tthreshold\n";
    for (std::size_t c = 0; c < thresholds.size(); ++c) {
        out += column_name(thresholds.size(), c) + '\t' + io::format_exact(thresholds[c]) + '\n';
    }
    io::write_file(path, out);
}

std::vector<double> read_thresholds(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    std::vector<double> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cells = io::split_tabs(lines[i]);
        if (i == 0 && cells[0] == "column") continue;
        double v = 0.0;
        if (cells.size() != 2 || !io::parse_double(cells[1], v) || !(v >= 0.0 && v <= 1.0)) {
            throw ParseError(path.string(), i + 1, "expected 'column<TAB>threshold' with a threshold in [0, 1]");
        }
        out.push_back(v);
    }
    if (out.size() != 1 && out.size() != corpus::kCategoryCount) {
        throw ValidationError(path.string() + ": expected 1 or 7 thresholds, found " + std::to_string(out.size()));
    }
    return out;
}

void emit_curves(const ThresholdChoice& choice, const std::filesystem::path& dir) {
    for (std::size_t c = 0; c < choice.searches.size(); ++c) {
        if (choice.searches[c].curve.empty()) continue;
        const std::string stem = choice.searches.size() == 1 ? "curve" : "curve_c" + std::to_string(c);
        report::emit_threshold_curve(choice.searches[c], {dir / (stem + ".tsv"), dir / (stem + ".svg")});
    }
}

Evaluation evaluate(const ensemble::ScoreMatrix& scores, const GoldTable& gold, const std::vector<std::string>& ids,
                    const std::vector<double>& thresholds) {
    if (thresholds.size() != scores.columns) {
        throw UsageError(std::to_string(thresholds.size()) + " threshold(s) given for " +
                         std::to_string(scores.columns) + " score column(s)");
    }
    const auto data = labeled_columns(scores, gold, ids);
    Evaluation e;
    std::array<std::vector<bool>, corpus::kCategoryCount> y_true;
    std::array<std::vector<bool>, corpus::kCategoryCount> y_pred;
    for (std::size_t c = 0; c < scores.columns; ++c) {
        const auto pred = metrics::binarize(data[c].y_out, thresholds[c]);
        e.per_column.push_back(metrics::f1_score(data[c].y_true, pred));
        if (scores.columns == corpus::kCategoryCount) {
            y_true[c] = data[c].y_true;
            y_pred[c] = pred;
        }
    }
    if (scores.columns == corpus::kCategoryCount) e.multilabel = metrics::multilabel_report(y_true, y_pred);
    return e;
}

std::map<std::string, double> emit_reports(const ReportInputs& in, const std::filesystem::path& dir) {
    const std::size_t columns = in.system.columns;
    const std::vector<double> defaults(columns, metrics::kDefaultThreshold);
    std::map<std::string, double> values;
    std::vector<report::NamedReport> binary_rows;
    std::vector<report::NamedMultiLabelReport> multi_rows;

    auto add = [&](const std::string& name, const Evaluation& e) {
        if (columns == 1) {
            const auto& r = e.per_column[0];
            binary_rows.push_back({name, r});
            values[name + ".precision"] = r.precision;
            values[name + ".recall"] = r.recall;
            values[name + ".f1"] = r.f1;
        } else {
            multi_rows.push_back({name, e.multilabel});
            values[name + ".macro_precision"] = e.multilabel.macro_precision;
            values[name + ".macro_recall"] = e.multilabel.macro_recall;
            values[name + ".macro_f1"] = e.multilabel.macro_f1;
            for (std::size_t c = 0; c < columns; ++c) {
                values[name + ".f1_c" + std::to_string(c)] = e.multilabel.per_category[c].f1;
            }
        }
    };

    for (const auto part : {corpus::SplitPart::Validation, corpus::SplitPart::Test}) {
        const auto ids = present_ids(in.split.ids(part), in.system);
        if (ids.empty()) continue;
        const std::string prefix = corpus::to_string(part);
        for (const auto& m : in.members) add(prefix + "/" + m.model_id, evaluate(m, in.gold, ids, defaults));
        add(prefix + "/ensemble", evaluate(in.system, in.gold, ids, in.thresholds));
    }
    if (columns == 1) {
        report::emit_metrics_table(binary_rows, dir / "metrics.tsv");
    } else {
        report::emit_multilabel_table(multi_rows, dir / "metrics.tsv");
    }

    // Error analysis on the held-out part; multi-label rows collapse to "any category".
    const auto test_ids = present_ids(in.split.test_ids, in.system);
    std::unordered_map<std::string, const corpus::Paragraph*> paragraphs;
    std::unordered_map<std::string, const corpus::CategoryVector*> categories;
    if (in.dataset) {
        for (const auto& p : in.dataset->corpus.paragraphs) paragraphs.emplace(p.id, &p);
        for (const auto& r : in.dataset->categories) categories.emplace(r.paragraph_id, &r.labels);
    }
    const auto system_rows = row_index(in.system);
    const auto baseline_rows = row_index(in.baseline);
    std::vector<report::GoldItem> gold_items;
    std::vector<report::Prediction> baseline_preds;
    std::vector<report::Prediction> system_preds;
    for (const auto& id : test_ids) {
        report::GoldItem item;
        item.id = id;
        const auto& g = in.gold.at(id);
        item.label = std::find(g.begin(), g.end(), true) != g.end();
        if (const auto p = paragraphs.find(id); p != paragraphs.end()) item.text = p->second->text;
        if (const auto c = categories.find(id); c != categories.end()) item.categories = *c->second;
        gold_items.push_back(std::move(item));

        const auto br = find_row(baseline_rows, id, in.baseline.model_id);
        const auto sr = find_row(system_rows, id, in.system.model_id);
        bool base = false;
        bool sys = false;
        for (std::size_t c = 0; c < columns; ++c) {
            base = base || in.baseline.at(br, c) >= metrics::kDefaultThreshold;
            sys = sys || in.system.at(sr, c) >= in.thresholds[c];
        }
        baseline_preds.push_back({id, base});
        system_preds.push_back({id, sys});
    }
    const auto rows = report::compare_systems(gold_items, baseline_preds, system_preds);
    io::write_file(dir / "errors.md", report::format_error_analysis(rows, 50));
    return values;
}

std::string default_run_id(const config::PipelineConfig& config) {
    auto snapshot = config.snapshot();
    snapshot.erase("out");
    snapshot.erase("run_id");
    std::string key;
    for (const auto& [k, v] : snapshot) key += k + "=" + v + "\n";
    for (const auto& path : {config.corpus, config.categories, config.split_file, config.baseline_scores}) {
        if (!path.empty()) key += report::file_checksum(path) + "\n";
    }
    for (const auto& m : config.members) key += report::file_checksum(m) + "\n";
    return std::string(config::to_string(config.task)) + "-s" + std::to_string(config.seed) + "-" +
           io::hex64(io::fnv1a64(key)).substr(0, 12);
}

report::RunManifest build_manifest(const config::PipelineConfig& config, const std::string& run_id,
                                   const std::map<std::string, std::filesystem::path>& inputs,
                                   const std::vector<std::string>& member_models,
                                   const std::vector<double>& thresholds,
                                   const std::map<std::string, double>& metrics) {
    report::RunManifest m;
    m.set("run_id", run_id);
    m.set_integer("seed", static_cast<long long>(config.seed));
    m.set("task", config::to_string(config.task));
    for (const auto& [k, v] : config.snapshot()) m.set("config." + k, v);
    for (const auto& [name, path] : inputs) {
        m.set("input." + name, path.string());
        m.set("checksum." + name, report::file_checksum(path));
    }
    std::string members;
    for (const auto& id : member_models) members += (members.empty() ? "" : ",") + id;
    m.set("members", members);
    for (std::size_t c = 0; c < thresholds.size(); ++c) {
        m.set_number("threshold." + column_name(thresholds.size(), c), thresholds[c]);
    }
    for (const auto& [k, v] : metrics) m.set_number("metric." + k, v);
    return m;
}

config::PipelineConfig config_from_manifest(const report::RunManifest& manifest) {
    config::PipelineConfig config;
    const std::string prefix = "config.";
    for (const auto& [key, raw] : manifest.values) {
        if (key.rfind(prefix, 0) != 0) continue;
        config.set(key.substr(prefix.size()), manifest.get(key));
    }
    return config;
}

RunSummary run_all(const config::PipelineConfig& config) {
    config.validate();
    RunSummary summary;
    const auto dataset = load_dataset(config);
    const auto split = resolve_split(config, dataset.corpus.paragraphs);
    const auto gold = gold_from_dataset(config.task, dataset);

    summary.run_id = config.run_id.empty() ? default_run_id(config) : config.run_id;
    summary.run_dir = config.out / summary.run_id;
    const auto& dir = summary.run_dir;
    std::filesystem::create_directories(dir / "scores");

    corpus::write_split_file(dir / "split.tsv", split);
    write_gold_file(dir / "gold.tsv", gold);
    corpus::write_text_export(dir / "corpus_export.tsv", dataset.corpus.paragraphs);

    std::vector<corpus::Paragraph> augmented;
    if (config.translator != "none") {
        auto translator = make_translator(config);
        summary.augmentation = augment_training(config, dataset, split, *translator);
        for (const auto& f : summary.augmentation.failures) {
            summary.warnings.push_back("augmentation failed for '" + f.source_id + "': " + f.message);
        }
        augment::write_augmented(dir / "augmented.tsv", summary.augmentation.samples, dataset.corpus.paragraphs);
        augmented = read_augmented(dir / "augmented.tsv");
    }

    const auto trained = train_models(config, dataset, split, augmented, summary.warnings);
    model::save_models(dir / "model.txt", trained);
    const auto models = model::load_models(dir / "model.txt");

    ensemble::write_score_file(dir / "scores" / "linear.tsv", score_corpus(models, dataset, "linear"));
    std::vector<ensemble::ScoreMatrix> members{ensemble::validate_score_file(dir / "scores" / "linear.tsv")};
    for (const auto& path : config.members) members.push_back(ensemble::validate_score_file(path));

    const auto combined = ensemble::average(members, config.alignment);
    summary.warnings.insert(summary.warnings.end(), combined.warnings.begin(), combined.warnings.end());
    ensemble::write_score_file(dir / "scores" / "ensemble.tsv", combined.as_matrix());
    const auto system = ensemble::validate_score_file(dir / "scores" / "ensemble.tsv");

    const auto choice =
        choose_thresholds(config.thresholds, system, gold, present_ids(split.validation_ids, system));
    write_thresholds(dir / "thresholds.tsv", choice.thresholds);
    emit_curves(choice, dir);
    summary.thresholds = choice.thresholds;

    ReportInputs inputs;
    inputs.members = members;
    inputs.system = system;
    inputs.thresholds = choice.thresholds;
    inputs.baseline = config.baseline_scores.empty() ? members.front()
                                                     : ensemble::validate_score_file(config.baseline_scores);
    inputs.gold = gold;
    inputs.dataset = &dataset;
    inputs.split = split;
    summary.metrics = emit_reports(inputs, dir);

    std::map<std::string, std::filesystem::path> manifest_inputs{{"corpus", config.corpus}};
    if (!config.categories.empty()) manifest_inputs["categories"] = config.categories;
    if (!config.split_file.empty()) manifest_inputs["split_file"] = config.split_file;
    if (!config.baseline_scores.empty()) manifest_inputs["baseline_scores"] = config.baseline_scores;
    for (std::size_t i = 0; i < config.members.size(); ++i) {
        manifest_inputs["member" + std::to_string(i + 1)] = config.members[i];
    }
    auto manifest = build_manifest(config, summary.run_id, manifest_inputs, combined.member_models,
                                   choice.thresholds, summary.metrics);
    manifest.set_integer("augmented_samples", static_cast<long long>(summary.augmentation.samples.size()));
    for (std::size_t i = 0; i < summary.warnings.size(); ++i) {
        manifest.set("warning." + std::to_string(i + 1), summary.warnings[i]);
    }
    io::write_file(dir / "manifest.toml", manifest.render());
    return summary;
}

}  // namespace pcl::pipeline
