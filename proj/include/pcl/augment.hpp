#pragma once

// Backtranslation augmentation: send a paragraph through a pivot language and
// back, keep the labels, and cache results per (source id, pivot, translator).

#include "pcl/corpus.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace pcl::augment {

class Translator {
public:
    virtual ~Translator() = default;

    // Must be safe to call from several threads at once.
    virtual std::string translate(std::string_view text, std::string_view source, std::string_view target) = 0;

    // Stable identifier recorded in provenance and cache keys.
    virtual std::string id() const = 0;
};

class IdentityTranslator final : public Translator {
public:
    std::string translate(std::string_view text, std::string_view, std::string_view) override {
        return std::string(text);
    }
    std::string id() const override { return "identity"; }
};

// Reverses the code points of the text on every call; two calls cancel out.
class ReversingTranslator final : public Translator {
public:
    std::string translate(std::string_view text, std::string_view, std::string_view) override;
    std::string id() const override { return "reverse"; }
};

// Deterministic paraphrase stand-in: every call rotates the word order by one
// position, so a round trip moves the first two words to the end.
class WordShuffleTranslator final : public Translator {
public:
    std::string translate(std::string_view text, std::string_view, std::string_view) override;
    std::string id() const override { return "word-shuffle"; }
};

struct HttpTranslatorOptions {
    std::string url;  // e.g. http://localhost:5000/translate
    std::chrono::milliseconds timeout{30000};
    int retries = 2;  // extra attempts after the first failure
};

// POSTs {"text", "source", "target"} as JSON and reads {"text"} back.
class HttpTranslator final : public Translator {
public:
    explicit HttpTranslator(HttpTranslatorOptions options);

    std::string translate(std::string_view text, std::string_view source, std::string_view target) override;
    std::string id() const override;

private:
    HttpTranslatorOptions options_;
    std::string scheme_host_port_;
    std::string path_;
};

// Wraps another translator and counts calls; used to check cache behaviour.
class CountingTranslator final : public Translator {
public:
    explicit CountingTranslator(Translator& inner) : inner_(inner) {}

    std::string translate(std::string_view text, std::string_view source, std::string_view target) override {
        ++calls_;
        return inner_.translate(text, source, target);
    }
    std::string id() const override { return inner_.id(); }
    std::size_t calls() const { return calls_.load(); }

private:
    Translator& inner_;
    std::atomic<std::size_t> calls_{0};
};

struct AugmentedSample {
    std::string source_id;
    std::string text;
    int original_label = 0;
    double soft_label = 0.0;
    bool binary_label = false;
    std::string pivot;
    std::string translator_id;

    // Id of the derived paragraph, "<source>~bt-<pivot>".
    std::string id() const;
    corpus::Paragraph to_paragraph(const corpus::Paragraph& source) const;

    bool operator==(const AugmentedSample&) const = default;
};

// Collapses whitespace runs to one space and trims the ends.
std::string normalize_whitespace(std::string_view text);

AugmentedSample backtranslate(const corpus::Paragraph& paragraph, Translator& translator,
                              std::string_view pivot = "fr");

// Thread-safe map from (source id, pivot, translator id) to the round-trip
// text. When bound to a file every new entry is appended immediately.
class TranslationCache {
public:
    TranslationCache() = default;
    explicit TranslationCache(std::filesystem::path path);

    std::optional<std::string> find(const std::string& source_id, const std::string& pivot,
                                    const std::string& translator_id) const;
    void insert(const std::string& source_id, const std::string& pivot, const std::string& translator_id,
                const std::string& text);
    std::size_t size() const;

private:
    using Key = std::tuple<std::string, std::string, std::string>;

    mutable std::mutex mutex_;
    std::map<Key, std::string> entries_;
    std::optional<std::filesystem::path> path_;
};

enum class Policy { PositivesOnly, All };

std::optional<Policy> parse_policy(std::string_view name);
const char* to_string(Policy policy);

struct AugmentOptions {
    Policy policy = Policy::PositivesOnly;
    bool dedup = true;
    std::string pivot = "fr";
    std::size_t max_concurrency = 4;
};

struct AugmentFailure {
    std::string source_id;
    std::string message;
};

struct AugmentReport {
    std::vector<AugmentedSample> samples;  // input order
    std::vector<AugmentFailure> failures;  // input order
    std::size_t attempted = 0;
    std::size_t cache_hits = 0;
    std::size_t duplicates_dropped = 0;
};

// Never throws for per-sample problems; they are collected in failures.
AugmentReport augment_corpus(const std::vector<corpus::Paragraph>& paragraphs, Translator& translator,
                             const AugmentOptions& options, TranslationCache& cache);

// Writes the augmented paragraphs in the binary corpus layout and a
// "<path>.provenance.tsv" sidecar (id, source_id, pivot, translator_id).
void write_augmented(const std::filesystem::path& path, const std::vector<AugmentedSample>& samples,
                     const std::vector<corpus::Paragraph>& sources);

}  // namespace pcl::augment
