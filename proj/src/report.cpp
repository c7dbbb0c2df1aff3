#include "pcl/report.hpp"

#include "pcl/error.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace pcl::report {

const char* to_string(Bucket bucket) {
    switch (bucket) {
    case Bucket::BothCorrect: return "both-correct";
    case Bucket::SystemFixed: return "system-fixed";
    case Bucket::SystemBroke: return "system-broke";
    case Bucket::BothWrong: return "both-wrong";
    }
    return "?";
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::None: return "none";
    case ErrorKind::FalsePositive: return "false-positive";
    case ErrorKind::FalseNegative: return "false-negative";
    }
    return "?";
}

Bucket bucket_of(bool gold, bool baseline, bool system) {
    const bool baseline_ok = baseline == gold;
    const bool system_ok = system == gold;
    if (baseline_ok && system_ok) return Bucket::BothCorrect;
    if (!baseline_ok && system_ok) return Bucket::SystemFixed;
    if (baseline_ok && !system_ok) return Bucket::SystemBroke;
    return Bucket::BothWrong;
}

namespace {

std::unordered_map<std::string_view, bool> index_predictions(const std::vector<Prediction>& predictions,
                                                             const char* name) {
    std::unordered_map<std::string_view, bool> out;
    for (const auto& p : predictions) {
        if (!out.emplace(p.id, p.positive).second) {
            throw ConsistencyError(std::string(name) + " predictions repeat id '" + p.id + "'");
        }
    }
    return out;
}

}  // namespace

std::vector<ErrorAnalysisRow> compare_systems(const std::vector<GoldItem>& gold,
                                              const std::vector<Prediction>& baseline,
                                              const std::vector<Prediction>& system) {
    const auto base = index_predictions(baseline, "baseline");
    const auto sys = index_predictions(system, "system");
    if (base.size() != gold.size() || sys.size() != gold.size()) {
        throw ConsistencyError("gold, baseline and system cover different numbers of ids (" +
                               std::to_string(gold.size()) + ", " + std::to_string(base.size()) + ", " +
                               std::to_string(sys.size()) + ")");
    }
    std::vector<ErrorAnalysisRow> rows;
    rows.reserve(gold.size());
    for (const auto& g : gold) {
        const auto b = base.find(g.id);
        const auto s = sys.find(g.id);
        if (b == base.end() || s == sys.end()) {
            throw ConsistencyError("id '" + g.id + "' has no " + (b == base.end() ? "baseline" : "system") +
                                   " prediction");
        }
        ErrorAnalysisRow row;
        row.id = g.id;
        row.text = g.text;
        row.gold = g.label;
        row.baseline = b->second;
        row.system = s->second;
        row.categories = g.categories;
        row.bucket = bucket_of(row.gold, row.baseline, row.system);
        if (row.bucket != Bucket::BothCorrect) {
            row.kind = row.gold ? ErrorKind::FalseNegative : ErrorKind::FalsePositive;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string category_list(const corpus::CategoryVector& categories) {
    std::string out;
    for (std::size_t c = 0; c < corpus::kCategoryCount; ++c) {
        if (!categories[c]) continue;
        if (!out.empty()) out += ", ";
        out += corpus::kCategoryNames[c];
    }
    return out.empty() ? "-" : out;
}

std::string markdown_cell(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '|') out += "\\|";
        else if (c == '\n' || c == '\r' || c == '\t') out += ' ';
        else out += c;
    }
    return out;
}

const char* polarity(bool positive) { return positive ? "pos." : "neg."; }

}  // namespace

std::string format_error_analysis(const std::vector<ErrorAnalysisRow>& rows, std::size_t max_rows) {
    std::string out = "# Error analysis\n\n";
    std::map<Bucket, std::size_t> totals;
    for (const auto& r : rows) ++totals[r.bucket];
    out += "| bucket | count |\n|---|---|\n";
    for (auto b : {Bucket::BothCorrect, Bucket::SystemFixed, Bucket::SystemBroke, Bucket::BothWrong}) {
        out += std::string("| ") + to_string(b) + " | " + std::to_string(totals[b]) + " |\n";
    }
    for (auto b : {Bucket::SystemFixed, Bucket::SystemBroke, Bucket::BothWrong}) {
        for (auto kind : {ErrorKind::FalseNegative, ErrorKind::FalsePositive}) {
            out += std::string("\n## ") + to_string(b) + ", " + to_string(kind) + "\n\n";
            out += "| id | text | label | baseline pred. | system pred. | categories |\n|---|---|---|---|---|---|\n";
            std::size_t shown = 0;
            for (const auto& r : rows) {
                if (r.bucket != b || r.kind != kind) continue;
                if (max_rows != 0 && shown == max_rows) break;
                out += "| " + markdown_cell(r.id) + " | " + markdown_cell(r.text) + " | " + polarity(r.gold) + " | " +
                       polarity(r.baseline) + " | " + polarity(r.system) + " | " + category_list(r.categories) +
                       " |\n";
                ++shown;
            }
        }
    }
    return out;
}

std::string format_curve_tsv(const metrics::ThresholdSearchResult& result) {
    std::string out = "threshold\tf1\n";
    for (const auto& p : result.curve) out += io::format_fixed(p.threshold, 9) + '\t' + io::format_fixed(p.f1, 9) + '\n';
    return out;
}

std::string render_curve_svg(const metrics::ThresholdSearchResult& result) {
    constexpr double width = 640, height = 400, left = 60, right = 20, top = 20, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto x_of = [&](double t) { return left + std::clamp(t, 0.0, 1.0) * plot_w; };
    auto y_of = [&](double f) { return top + (1.0 - std::clamp(f, 0.0, 1.0)) * plot_h; };
    auto num = [](double v) { return io::format_fixed(v, 2); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<g stroke=\"#888\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n";
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int k = 0; k <= 10; k += 2) {
        const double v = k / 10.0;
        svg << "<text x=\"" << num(x_of(v)) << "\" y=\"" << num(top + plot_h + 16) << "\" text-anchor=\"middle\">"
            << io::format_fixed(v, 1) << "</text>\n";
        svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y_of(v) + 4) << "\" text-anchor=\"end\">"
            << io::format_fixed(v, 1) << "</text>\n";
    }
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 10)
        << "\" text-anchor=\"middle\">threshold</text>\n";
    svg << "<text x=\"15\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << num(top + plot_h / 2) << ")\">F1</text>\n</g>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < result.curve.size(); ++i) {
        if (i) svg << ' ';
        svg << num(x_of(result.curve[i].threshold)) << ',' << num(y_of(result.curve[i].f1));
    }
    svg << "\"/>\n";
    svg << "<circle cx=\"" << num(x_of(result.best_threshold)) << "\" cy=\"" << num(y_of(result.best_f1))
        << "\" r=\"4\" fill=\"#d62728\"><title>best threshold " << io::format_fixed(result.best_threshold, 4)
        << ", F1 " << io::format_fixed(result.best_f1, 4) << "</title></circle>\n";
    svg << "</svg>\n";
    return svg.str();
}

void emit_threshold_curve(const metrics::ThresholdSearchResult& result, const CurveFiles& files) {
    if (result.curve.empty()) throw ValidationError("cannot emit an empty threshold curve");
    io::write_file(files.tsv, format_curve_tsv(result));
    io::write_file(files.svg, render_curve_svg(result));
}

std::string format_percent(double fraction) { return io::format_fixed(fraction * 100.0, 2); }

std::string format_metrics_table(const std::vector<NamedReport>& reports) {
    std::string out = "system\tP\tR\tF1\n";
    for (const auto& r : reports) {
        out += r.name + '\t' + format_percent(r.report.precision) + '\t' + format_percent(r.report.recall) + '\t' +
               format_percent(r.report.f1) + '\n';
    }
    return out;
}

std::string format_multilabel_table(const std::vector<NamedMultiLabelReport>& reports) {
    std::string out = "system\tmacro_P\tmacro_R\tmacro_F1";
    for (std::size_t c = 0; c < corpus::kCategoryCount; ++c) out += "\tF1_c" + std::to_string(c);
    out += '\n';
    for (const auto& r : reports) {
        out += r.name + '\t' + format_percent(r.report.macro_precision) + '\t' +
               format_percent(r.report.macro_recall) + '\t' + format_percent(r.report.macro_f1);
        for (const auto& c : r.report.per_category) out += '\t' + format_percent(c.f1);
        out += '\n';
    }
    return out;
}

void emit_metrics_table(const std::vector<NamedReport>& reports, const std::filesystem::path& path) {
    io::write_file(path, format_metrics_table(reports));
}

void emit_multilabel_table(const std::vector<NamedMultiLabelReport>& reports, const std::filesystem::path& path) {
    io::write_file(path, format_multilabel_table(reports));
}

namespace {

std::string quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + '"';
}

}  // namespace

void RunManifest::set(const std::string& key, const std::string& text) { values[key] = quote(text); }

void RunManifest::set_number(const std::string& key, double value) { values[key] = io::format_exact(value); }

void RunManifest::set_integer(const std::string& key, long long value) { values[key] = std::to_string(value); }

std::string RunManifest::get(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) return {};
    const auto& raw = it->second;
    if (raw.size() < 2 || raw.front() != '"') return raw;
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 2 < raw.size()) {
            const char next = raw[++i];
            out += next == 'n' ? '\n' : next == 't' ? '\t' : next;
        } else {
            out += raw[i];
        }
    }
    return out;
}

std::string RunManifest::render() const {
    std::string out;
    for (const auto& [key, value] : values) out += key + " = " + value + '\n';
    return out;
}

RunManifest RunManifest::parse(const std::string& text, const std::string& source) {
    RunManifest m;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto trimmed = io::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) throw ParseError(source, line_no, "expected 'key = value'");
        const auto key = io::trim(std::string_view(trimmed).substr(0, eq));
        const auto value = io::trim(std::string_view(trimmed).substr(eq + 1));
        if (key.empty()) throw ParseError(source, line_no, "empty key");
        m.values[key] = value;
    }
    return m;
}

std::string file_checksum(const std::filesystem::path& path) {
    return "fnv1a64:" + io::hex64(io::fnv1a64(io::read_file(path)));
}

std::vector<std::string> verify_manifest_inputs(const RunManifest& manifest) {
    std::vector<std::string> problems;
    const std::string prefix = "checksum.";
    for (const auto& [key, raw] : manifest.values) {
        if (key.rfind(prefix, 0) != 0) continue;
        const auto name = key.substr(prefix.size());
        const auto path = manifest.get("input." + name);
        if (path.empty()) {
            problems.push_back(key + ": no matching input." + name);
            continue;
        }
        try {
            if (file_checksum(path) != manifest.get(key)) problems.push_back(name + ": checksum mismatch for " + path);
        } catch (const Error& e) {
            problems.push_back(name + ": " + e.what());
        }
    }
    return problems;
}

}  // namespace pcl::report
