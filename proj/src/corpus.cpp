#include "pcl/corpus.hpp"

#include "pcl/error.hpp"
#include "pcl/random.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pcl::corpus {

double soft_label_of(int original_label) {
    if (original_label < 0 || original_label > 4) {
        throw ValidationError("label " + std::to_string(original_label) + " outside 0..4");
    }
    return original_label / 4.0;
}

bool binary_label_of(int original_label) {
    if (original_label < 0 || original_label > 4) {
        throw ValidationError("label " + std::to_string(original_label) + " outside 0..4");
    }
    return original_label >= 2;
}

Paragraph Paragraph::make(std::string id, std::string article_id, std::string keyword,
                          std::string country, std::string text, int original_label) {
    Paragraph p;
    p.id = std::move(id);
    p.article_id = std::move(article_id);
    p.keyword = std::move(keyword);
    p.country = std::move(country);
    p.text = std::move(text);
    p.original_label = original_label;
    p.soft_label = soft_label_of(original_label);
    p.binary_label = binary_label_of(original_label);
    return p;
}

bool CategoryRecord::any() const {
    return std::any_of(labels.begin(), labels.end(), [](bool b) { return b; });
}

namespace {

std::vector<std::string_view> lines_of(std::string_view contents) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < contents.size()) {
        auto nl = contents.find('\n', start);
        if (nl == std::string_view::npos) nl = contents.size();
        lines.push_back(io::chomp(contents.substr(start, nl - start)));
        start = nl + 1;
    }
    return lines;
}

bool blank(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    });
}

void require_plain_field(std::string_view field, const std::string& what) {
    if (field.find_first_of("\t\n\r") != std::string_view::npos) {
        throw ValidationError(what + " contains a tab or line break and cannot be written as TSV");
    }
}

}  // namespace

BinaryCorpus parse_binary_corpus_text(std::string_view contents, const std::string& source,
                                      const BinaryParseOptions& options) {
    BinaryCorpus corpus;
    const auto lines = lines_of(contents);
    for (std::size_t i = options.header_lines; i < lines.size(); ++i) {
        const auto line = lines[i];
        const std::size_t line_no = i + 1;
        if (line.empty()) continue;
        const auto fields = io::split_tabs(line);
        if (fields.size() != 6) {
            throw ParseError(source, line_no,
                             "expected 6 tab-separated columns, found " + std::to_string(fields.size()));
        }
        long long label = 0;
        if (!io::parse_int(io::trim(fields[5]), label)) {
            throw ParseError(source, line_no, "label '" + std::string(fields[5]) + "' is not an integer");
        }
        if (label < 0 || label > 4) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": label " +
                                  std::to_string(label) + " outside 0..4");
        }
        if (blank(fields[4])) {
            ++corpus.dropped_empty;
            continue;
        }
        corpus.paragraphs.push_back(Paragraph::make(std::string(fields[0]), std::string(fields[1]),
                                                    std::string(fields[2]), std::string(fields[3]),
                                                    std::string(fields[4]), static_cast<int>(label)));
    }
    return corpus;
}

BinaryCorpus parse_binary_corpus(const std::filesystem::path& path, const BinaryParseOptions& options) {
    return parse_binary_corpus_text(io::read_file(path), path.string(), options);
}

std::string format_binary_corpus(const std::vector<Paragraph>& paragraphs) {
    std::string out;
    for (const auto& p : paragraphs) {
        for (const auto* field : {&p.id, &p.article_id, &p.keyword, &p.country, &p.text}) {
            require_plain_field(*field, "paragraph " + p.id);
        }
        out += p.id + '\t' + p.article_id + '\t' + p.keyword + '\t' + p.country + '\t' + p.text + '\t' +
               std::to_string(p.original_label) + '\n';
    }
    return out;
}

void write_binary_corpus(const std::filesystem::path& path, const std::vector<Paragraph>& paragraphs) {
    io::write_file(path, format_binary_corpus(paragraphs));
}

void write_text_export(const std::filesystem::path& path, const std::vector<Paragraph>& paragraphs) {
    std::string out = "id\ttext\n";
    for (const auto& p : paragraphs) {
        require_plain_field(p.text, "paragraph " + p.id);
        out += p.id + '\t' + p.text + '\n';
    }
    io::write_file(path, out);
}

std::optional<std::size_t> category_index(std::string_view name) {
    std::string key;
    for (char c : io::trim(name)) {
        if (c == '_' || c == '-') c = ' ';
        if (c == ',') continue;
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (c == ' ' && (key.empty() || key.back() == ' ')) continue;
        key += c;
    }
    while (!key.empty() && key.back() == ' ') key.pop_back();
    if (key == "metaphors") key = "metaphor";
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        if (kCategoryNames[i] == key) return i;
    }
    return std::nullopt;
}

std::vector<CategoryRecord> parse_category_corpus_text(std::string_view contents, const std::string& source,
                                                       const std::vector<Paragraph>& paragraphs,
                                                       const CategoryParseOptions& options) {
    std::unordered_map<std::string_view, const Paragraph*> by_id;
    for (const auto& p : paragraphs) by_id.emplace(p.id, &p);

    std::vector<CategoryRecord> records;
    std::unordered_map<std::string, std::size_t> slot;
    const auto lines = lines_of(contents);
    for (std::size_t i = options.header_lines; i < lines.size(); ++i) {
        const auto line = lines[i];
        const std::size_t line_no = i + 1;
        if (line.empty()) continue;
        const auto fields = io::split_tabs(line);
        if (fields.size() != 10) {
            throw ParseError(source, line_no,
                             "expected 10 tab-separated columns, found " + std::to_string(fields.size()));
        }
        const std::string id(fields[0]);
        const auto found = by_id.find(id);
        if (found == by_id.end()) {
            throw ConsistencyError(source + ":" + std::to_string(line_no) + ": paragraph '" + id +
                                   "' is not in the binary corpus");
        }
        const auto category = category_index(fields[8]);
        if (!category) {
            std::string accepted;
            for (auto n : kCategoryNames) accepted += (accepted.empty() ? "" : ", ") + std::string(n);
            throw ValidationError(source + ":" + std::to_string(line_no) + ": unknown category '" +
                                  std::string(fields[8]) + "' (accepted: " + accepted + ")");
        }
        long long start = 0;
        long long end = 0;
        if (!io::parse_int(io::trim(fields[5]), start) || !io::parse_int(io::trim(fields[6]), end)) {
            throw ParseError(source, line_no, "span offsets must be integers");
        }
        long long annotators = 0;
        if (!io::trim(fields[9]).empty() && !io::parse_int(io::trim(fields[9]), annotators)) {
            throw ParseError(source, line_no, "annotator count must be an integer");
        }
        const auto text_bytes = static_cast<long long>(found->second->text.size());
        if (start < 0 || start >= end || end > text_bytes) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": span [" + std::to_string(start) +
                                  ", " + std::to_string(end) + ") outside paragraph text of " +
                                  std::to_string(text_bytes) + " bytes");
        }

        auto [it, inserted] = slot.emplace(id, records.size());
        if (inserted) {
            records.push_back(CategoryRecord{id, {}, {}});
        }
        auto& record = records[it->second];
        record.labels[*category] = true;
        record.spans.push_back(
            CategorySpan{*category, static_cast<std::size_t>(start), static_cast<std::size_t>(end)});
    }
    return records;
}

std::vector<CategoryRecord> parse_category_corpus(const std::filesystem::path& path,
                                                  const std::vector<Paragraph>& paragraphs,
                                                  const CategoryParseOptions& options) {
    return parse_category_corpus_text(io::read_file(path), path.string(), paragraphs, options);
}

std::vector<CategoryRecord> expand_multilabel_with_negatives(const std::vector<CategoryRecord>& records,
                                                             const std::vector<Paragraph>& paragraphs) {
    std::unordered_map<std::string_view, const Paragraph*> by_id;
    for (const auto& p : paragraphs) by_id.emplace(p.id, &p);

    std::unordered_set<std::string_view> present;
    for (const auto& r : records) {
        const auto found = by_id.find(r.paragraph_id);
        if (found == by_id.end()) {
            throw ConsistencyError("category record '" + r.paragraph_id + "' has no paragraph");
        }
        if (!found->second->binary_label) {
            throw ConsistencyError("paragraph '" + r.paragraph_id +
                                   "' is binary-negative but already has a category record");
        }
        if (!present.insert(r.paragraph_id).second) {
            throw ConsistencyError("duplicate category record for '" + r.paragraph_id + "'");
        }
    }
    for (const auto& p : paragraphs) {
        if (p.binary_label && !present.count(p.id)) {
            throw ConsistencyError("positive paragraph '" + p.id + "' has no category record");
        }
    }

    std::vector<CategoryRecord> out = records;
    for (const auto& p : paragraphs) {
        if (!p.binary_label) out.push_back(CategoryRecord{p.id, {}, {}});
    }
    return out;
}

void write_category_labels(const std::filesystem::path& path, const std::vector<CategoryRecord>& records) {
    std::string out = "id";
    for (std::size_t c = 0; c < kCategoryCount; ++c) out += "\tc" + std::to_string(c);
    out += '\n';
    for (const auto& r : records) {
        out += r.paragraph_id;
        for (bool b : r.labels) out += b ? "\t1" : "\t0";
        out += '\n';
    }
    io::write_file(path, out);
}

std::vector<CategoryRecord> read_category_labels(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    std::vector<CategoryRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = io::split_tabs(lines[i]);
        if (fields.size() != kCategoryCount + 1) {
            throw ParseError(path.string(), i + 1, "expected id plus 7 label columns");
        }
        CategoryRecord r;
        r.paragraph_id = std::string(fields[0]);
        for (std::size_t c = 0; c < kCategoryCount; ++c) {
            if (fields[c + 1] == "1") r.labels[c] = true;
            else if (fields[c + 1] != "0") throw ParseError(path.string(), i + 1, "label cells must be 0 or 1");
        }
        records.push_back(std::move(r));
    }
    return records;
}

const char* to_string(SplitPart part) {
    switch (part) {
    case SplitPart::Train: return "train";
    case SplitPart::Validation: return "validation";
    case SplitPart::Test: return "test";
    }
    return "?";
}

std::optional<SplitPart> parse_split_part(std::string_view name) {
    const auto key = io::to_lower_ascii(io::trim(name));
    if (key == "train") return SplitPart::Train;
    if (key == "validation" || key == "dev" || key == "val") return SplitPart::Validation;
    if (key == "test") return SplitPart::Test;
    return std::nullopt;
}

const std::vector<std::string>& SplitAssignment::ids(SplitPart part) const {
    switch (part) {
    case SplitPart::Train: return train_ids;
    case SplitPart::Validation: return validation_ids;
    case SplitPart::Test: return test_ids;
    }
    return train_ids;
}

SplitAssignment make_split(const std::vector<Paragraph>& paragraphs, std::uint64_t seed, double test_fraction,
                           double validation_fraction) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ValidationError("test fraction must lie in (0, 1)");
    }
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw ValidationError("validation fraction must lie in (0, 1)");
    }
    const std::size_t n = paragraphs.size();
    const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
    const auto n_val =
        static_cast<std::size_t>(std::llround(static_cast<double>(n - n_test) * validation_fraction));
    if (n > 0 && n_test + n_val >= n) {
        throw ValidationError("test and validation fractions leave no training data for " + std::to_string(n) +
                              " paragraphs");
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    SeededRng rng(seed);
    rng.shuffle(order);

    std::vector<SplitPart> part(n, SplitPart::Train);
    for (std::size_t k = 0; k < n_test; ++k) part[order[k]] = SplitPart::Test;
    for (std::size_t k = n_test; k < n_test + n_val; ++k) part[order[k]] = SplitPart::Validation;

    SplitAssignment split;
    split.seed = seed;
    for (std::size_t i = 0; i < n; ++i) {
        switch (part[i]) {
        case SplitPart::Train: split.train_ids.push_back(paragraphs[i].id); break;
        case SplitPart::Validation: split.validation_ids.push_back(paragraphs[i].id); break;
        case SplitPart::Test: split.test_ids.push_back(paragraphs[i].id); break;
        }
    }
    return split;
}

void validate_partition(const SplitAssignment& split, const std::vector<Paragraph>& paragraphs) {
    std::unordered_map<std::string_view, SplitPart> seen;
    for (auto part : {SplitPart::Train, SplitPart::Validation, SplitPart::Test}) {
        for (const auto& id : split.ids(part)) {
            auto [it, inserted] = seen.emplace(id, part);
            if (!inserted) {
                throw ValidationError("id '" + id + "' assigned to both " + to_string(it->second) + " and " +
                                      to_string(part));
            }
        }
    }
    std::size_t covered = 0;
    for (const auto& p : paragraphs) {
        if (!seen.count(p.id)) throw ValidationError("paragraph '" + p.id + "' is missing from the split");
        ++covered;
    }
    if (covered != seen.size()) {
        throw ValidationError("split references " + std::to_string(seen.size() - covered) +
                              " ids that are not in the corpus");
    }
}

namespace {

// Re-orders split ids to corpus order so externally supplied and seeded
// splits look the same downstream.
SplitAssignment in_corpus_order(const std::unordered_map<std::string, SplitPart>& assignment,
                                const std::vector<Paragraph>& paragraphs) {
    SplitAssignment split;
    std::size_t matched = 0;
    for (const auto& p : paragraphs) {
        const auto found = assignment.find(p.id);
        if (found == assignment.end()) throw ValidationError("paragraph '" + p.id + "' is missing from the split");
        ++matched;
        switch (found->second) {
        case SplitPart::Train: split.train_ids.push_back(p.id); break;
        case SplitPart::Validation: split.validation_ids.push_back(p.id); break;
        case SplitPart::Test: split.test_ids.push_back(p.id); break;
        }
    }
    if (matched != assignment.size()) {
        throw ValidationError("split references " + std::to_string(assignment.size() - matched) +
                              " ids that are not in the corpus");
    }
    return split;
}

void assign(std::unordered_map<std::string, SplitPart>& assignment, const std::string& id, SplitPart part,
            const std::string& source, std::size_t line_no) {
    auto [it, inserted] = assignment.emplace(id, part);
    if (!inserted) {
        throw ValidationError(source + ":" + std::to_string(line_no) + ": id '" + id + "' assigned twice");
    }
}

}  // namespace

SplitAssignment load_split_file(const std::filesystem::path& path, const std::vector<Paragraph>& paragraphs) {
    const auto lines = io::read_lines(path);
    std::unordered_map<std::string, SplitPart> assignment;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = io::split_tabs(lines[i]);
        if (fields.size() != 2) throw ParseError(path.string(), i + 1, "expected 'id<TAB>split'");
        const auto part = parse_split_part(fields[1]);
        if (!part) {
            if (i == 0) continue;  // header row
            throw ParseError(path.string(), i + 1, "unknown split '" + std::string(fields[1]) + "'");
        }
        assign(assignment, std::string(fields[0]), *part, path.string(), i + 1);
    }
    return in_corpus_order(assignment, paragraphs);
}

SplitAssignment load_split_files(const std::filesystem::path& train, const std::filesystem::path& validation,
                                 const std::filesystem::path& test, const std::vector<Paragraph>& paragraphs) {
    std::unordered_map<std::string, SplitPart> assignment;
    for (const auto& [path, part] : {std::pair{train, SplitPart::Train}, std::pair{validation, SplitPart::Validation},
                                     std::pair{test, SplitPart::Test}}) {
        const auto lines = io::read_lines(path);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const auto id = io::trim(lines[i]);
            if (!id.empty()) assign(assignment, id, part, path.string(), i + 1);
        }
    }
    return in_corpus_order(assignment, paragraphs);
}

void write_split_file(const std::filesystem::path& path, const SplitAssignment& split) {
    std::string out = "id\tsplit\n";
    for (auto part : {SplitPart::Train, SplitPart::Validation, SplitPart::Test}) {
        for (const auto& id : split.ids(part)) out += id + '\t' + to_string(part) + '\n';
    }
    io::write_file(path, out);
}

double biascorp_weighted_score(const BiasCorpRecord& record) {
    double weight = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < record.ratings.size(); ++i) {
        weight += record.confidences[i];
        total += record.ratings[i] * record.confidences[i];
    }
    if (weight == 0.0) throw ValidationError("BiasCorp record has zero total confidence");
    for (std::size_t i = 0; i < record.ratings.size(); ++i) {
        if (!(record.ratings[i] >= 0.0 && record.ratings[i] <= 5.0)) {
            throw ValidationError("BiasCorp rating outside [0, 5]");
        }
        if (!(record.confidences[i] >= 1.0 && record.confidences[i] <= 10.0)) {
            throw ValidationError("BiasCorp confidence outside [1, 10]");
        }
    }
    return total / weight;
}

bool derive_biascorp_label(const BiasCorpRecord& record) { return biascorp_weighted_score(record) > 1.0; }

bool derive_sbic_label(const SbicRecord& record) {
    if (!(record.offensiveness >= 0.0 && record.offensiveness <= 1.0)) {
        throw ValidationError("SBIC offensiveness outside [0, 1]");
    }
    return record.offensiveness >= kSbicThreshold;
}

}  // namespace pcl::corpus
