#include "pcl/augment.hpp"

#include "pcl/error.hpp"
#include "pcl/features.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

namespace pcl::augment {

namespace {

// Splits into UTF-8 code point byte ranges; malformed bytes stand alone.
std::vector<std::string_view> code_points(std::string_view text) {
    std::vector<std::string_view> out;
    for (std::size_t pos = 0; pos < text.size();) {
        const auto lead = static_cast<unsigned char>(text[pos]);
        std::size_t length = 1;
        if ((lead & 0xE0) == 0xC0) length = 2;
        else if ((lead & 0xF0) == 0xE0) length = 3;
        else if ((lead & 0xF8) == 0xF0) length = 4;
        if (pos + length > text.size()) length = 1;
        for (std::size_t k = 1; k < length; ++k) {
            if ((static_cast<unsigned char>(text[pos + k]) & 0xC0) != 0x80) {
                length = 1;
                break;
            }
        }
        out.push_back(text.substr(pos, length));
        pos += length;
    }
    return out;
}

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::string ReversingTranslator::translate(std::string_view text, std::string_view, std::string_view) {
    auto points = code_points(text);
    std::reverse(points.begin(), points.end());
    std::string out;
    out.reserve(text.size());
    for (auto p : points) out.append(p);
    return out;
}

std::string WordShuffleTranslator::translate(std::string_view text, std::string_view, std::string_view) {
    std::vector<std::string_view> words;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && is_ascii_space(text[pos])) ++pos;
        const std::size_t begin = pos;
        while (pos < text.size() && !is_ascii_space(text[pos])) ++pos;
        if (pos > begin) words.push_back(text.substr(begin, pos - begin));
    }
    if (words.size() > 1) std::rotate(words.begin(), words.begin() + 1, words.end());
    std::string out;
    for (auto w : words) {
        if (!out.empty()) out += ' ';
        out.append(w);
    }
    return out;
}

std::string AugmentedSample::id() const { return source_id + "~bt-" + pivot; }

corpus::Paragraph AugmentedSample::to_paragraph(const corpus::Paragraph& source) const {
    corpus::Paragraph p = source;
    p.id = id();
    p.text = text;
    std::replace_if(p.text.begin(), p.text.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    p.original_label = original_label;
    p.soft_label = soft_label;
    p.binary_label = binary_label;
    return p;
}

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_ascii_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

AugmentedSample backtranslate(const corpus::Paragraph& paragraph, Translator& translator, std::string_view pivot) {
    if (paragraph.text.empty()) throw ValidationError("paragraph '" + paragraph.id + "' has empty text");
    if (pivot.empty() || io::to_lower_ascii(pivot) == "en") {
        throw ValidationError("pivot language must differ from the source language 'en'");
    }
    std::string round_trip;
    try {
        const std::string forward = translator.translate(paragraph.text, "en", pivot);
        if (normalize_whitespace(forward).empty()) throw AugmentationError(paragraph.id, "empty pivot translation");
        round_trip = translator.translate(forward, pivot, "en");
    } catch (const AugmentationError&) {
        throw;
    } catch (const std::exception& e) {
        throw AugmentationError(paragraph.id, std::string("translator failed: ") + e.what());
    }
    if (normalize_whitespace(round_trip).empty()) throw AugmentationError(paragraph.id, "empty back translation");

    AugmentedSample sample;
    sample.source_id = paragraph.id;
    sample.text = std::move(round_trip);
    sample.original_label = paragraph.original_label;
    sample.soft_label = paragraph.soft_label;
    sample.binary_label = paragraph.binary_label;
    sample.pivot = std::string(pivot);
    sample.translator_id = translator.id();
    return sample;
}

TranslationCache::TranslationCache(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(*path_)) return;
    const auto lines = io::read_lines(*path_);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = io::split_tabs(lines[i]);
        if (fields.size() != 4) throw ParseError(path_->string(), i + 1, "expected 4 cache columns");
        // Append-only: the newest entry for a key wins.
        entries_[Key{io::unescape_cell(fields[0]), std::string(fields[1]), io::unescape_cell(fields[2])}] =
            io::unescape_cell(fields[3]);
    }
}

std::optional<std::string> TranslationCache::find(const std::string& source_id, const std::string& pivot,
                                                  const std::string& translator_id) const {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(Key{source_id, pivot, translator_id});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void TranslationCache::insert(const std::string& source_id, const std::string& pivot,
                              const std::string& translator_id, const std::string& text) {
    std::lock_guard lock(mutex_);
    entries_[Key{source_id, pivot, translator_id}] = text;
    if (!path_) return;
    if (path_->has_parent_path()) std::filesystem::create_directories(path_->parent_path());
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError(path_->string(), "cannot append to translation cache");
    out << io::escape_cell(source_id) << '\t' << pivot << '\t' << io::escape_cell(translator_id) << '\t'
        << io::escape_cell(text) << '\n';
    if (!out) throw IoError(path_->string(), "write failed");
}

std::size_t TranslationCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::optional<Policy> parse_policy(std::string_view name) {
    if (name == "positives-only" || name == "positives") return Policy::PositivesOnly;
    if (name == "all") return Policy::All;
    return std::nullopt;
}

const char* to_string(Policy policy) { return policy == Policy::All ? "all" : "positives-only"; }

namespace {

struct Outcome {
    std::optional<AugmentedSample> sample;
    std::optional<std::string> failure;
    bool cache_hit = false;
};

Outcome augment_one(const corpus::Paragraph& p, Translator& translator, const AugmentOptions& options,
                    TranslationCache& cache) {
    Outcome outcome;
    const std::string translator_id = translator.id();
    try {
        if (auto cached = cache.find(p.id, options.pivot, translator_id)) {
            AugmentedSample s;
            s.source_id = p.id;
            s.text = std::move(*cached);
            s.original_label = p.original_label;
            s.soft_label = p.soft_label;
            s.binary_label = p.binary_label;
            s.pivot = options.pivot;
            s.translator_id = translator_id;
            outcome.sample = std::move(s);
            outcome.cache_hit = true;
        } else {
            outcome.sample = backtranslate(p, translator, options.pivot);
            cache.insert(p.id, options.pivot, translator_id, outcome.sample->text);
        }
    } catch (const std::exception& e) {
        outcome.sample.reset();
        outcome.failure = e.what();
    }
    return outcome;
}

}  // namespace

AugmentReport augment_corpus(const std::vector<corpus::Paragraph>& paragraphs, Translator& translator,
                             const AugmentOptions& options, TranslationCache& cache) {
    std::vector<const corpus::Paragraph*> selected;
    for (const auto& p : paragraphs) {
        if (options.policy == Policy::All || p.binary_label) selected.push_back(&p);
    }

    std::vector<Outcome> outcomes(selected.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < selected.size(); i = next++) {
            outcomes[i] = augment_one(*selected[i], translator, options, cache);
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(options.max_concurrency, 1, std::max<std::size_t>(1, selected.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    AugmentReport report;
    report.attempted = selected.size();
    for (std::size_t i = 0; i < selected.size(); ++i) {
        auto& outcome = outcomes[i];
        if (outcome.cache_hit) ++report.cache_hits;
        if (outcome.failure) {
            report.failures.push_back(AugmentFailure{selected[i]->id, *outcome.failure});
            continue;
        }
        if (options.dedup && normalize_whitespace(outcome.sample->text) == normalize_whitespace(selected[i]->text)) {
            ++report.duplicates_dropped;
            continue;
        }
        report.samples.push_back(std::move(*outcome.sample));
    }
    return report;
}

void write_augmented(const std::filesystem::path& path, const std::vector<AugmentedSample>& samples,
                     const std::vector<corpus::Paragraph>& sources) {
    std::unordered_map<std::string_view, const corpus::Paragraph*> by_id;
    for (const auto& p : sources) by_id.emplace(p.id, &p);

    std::vector<corpus::Paragraph> paragraphs;
    std::string provenance = "id\tsource_id\tpivot\ttranslator_id\n";
    for (const auto& s : samples) {
        const auto found = by_id.find(s.source_id);
        if (found == by_id.end()) throw ConsistencyError("augmented sample source '" + s.source_id + "' not found");
        paragraphs.push_back(s.to_paragraph(*found->second));
        provenance += s.id() + '\t' + s.source_id + '\t' + s.pivot + '\t' + io::escape_cell(s.translator_id) + '\n';
    }
    corpus::write_binary_corpus(path, paragraphs);
    io::write_file(path.string() + ".provenance.tsv", provenance);
}

}  // namespace pcl::augment
