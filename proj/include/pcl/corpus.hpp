#pragma once

// Dataset ingestion: the binary paragraph corpus, the category (span)
// corpus, deterministic splits, and the label rules for the two auxiliary
// bias corpora.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcl::corpus {

inline constexpr std::size_t kCategoryCount = 7;

// Fixed category order; every 7-wide vector in the toolkit uses it.
inline constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "unbalanced power relations",
    "shallow solution",
    "presupposition",
    "authority voice",
    "metaphor",
    "compassion",
    "the poorer the merrier",
};

using CategoryVector = std::array<bool, kCategoryCount>;

// Maps the 0-4 annotation onto a probability of containing PCL.
double soft_label_of(int original_label);

// A paragraph is positive when the 0-4 annotation is at least 2.
bool binary_label_of(int original_label);

struct Paragraph {
    std::string id;
    std::string article_id;
    std::string text;
    std::string keyword;
    std::string country;
    int original_label = 0;
    double soft_label = 0.0;
    bool binary_label = false;

    // Builds a paragraph with both derived labels filled in. Throws
    // ValidationError for labels outside 0..4.
    static Paragraph make(std::string id, std::string article_id, std::string keyword,
                          std::string country, std::string text, int original_label);

    bool operator==(const Paragraph&) const = default;
};

struct CategorySpan {
    std::size_t category = 0;
    std::size_t start = 0;  // byte offset, inclusive
    std::size_t end = 0;    // byte offset, exclusive

    bool operator==(const CategorySpan&) const = default;
};

struct CategoryRecord {
    std::string paragraph_id;
    CategoryVector labels{};
    std::vector<CategorySpan> spans;

    bool any() const;
    bool operator==(const CategoryRecord&) const = default;
};

struct BinaryCorpus {
    std::vector<Paragraph> paragraphs;
    std::size_t dropped_empty = 0;
};

struct BinaryParseOptions {
    // Lines skipped before the first record (the official release ships a
    // disclaimer block; a plain header is one line).
    std::size_t header_lines = 0;
};

// Tab-separated: id, article_id, keyword, country, text, label.
BinaryCorpus parse_binary_corpus(const std::filesystem::path& path,
                                 const BinaryParseOptions& options = {});
BinaryCorpus parse_binary_corpus_text(std::string_view contents, const std::string& source,
                                      const BinaryParseOptions& options = {});

// Writes the same six-column layout parse_binary_corpus reads.
std::string format_binary_corpus(const std::vector<Paragraph>& paragraphs);
void write_binary_corpus(const std::filesystem::path& path, const std::vector<Paragraph>& paragraphs);

// "id<TAB>text" export consumed by external score exporters.
void write_text_export(const std::filesystem::path& path, const std::vector<Paragraph>& paragraphs);

// Accepts the canonical names plus the release spellings
// ("Unbalanced_power_relations", "Metaphors", "The_poorer_the_merrier", ...).
std::optional<std::size_t> category_index(std::string_view name);

struct CategoryParseOptions {
    std::size_t header_lines = 0;
};

// Tab-separated: id, art_id, text, keyword, country, span_start, span_end,
// span_text, category, annotators. Rows for the same paragraph merge into one
// record; records come out in order of first appearance.
std::vector<CategoryRecord> parse_category_corpus(const std::filesystem::path& path,
                                                  const std::vector<Paragraph>& paragraphs,
                                                  const CategoryParseOptions& options = {});
std::vector<CategoryRecord> parse_category_corpus_text(std::string_view contents,
                                                       const std::string& source,
                                                       const std::vector<Paragraph>& paragraphs,
                                                       const CategoryParseOptions& options = {});

// Adds an all-false record for every binary-negative paragraph (appended in
// corpus order). Input records are copied through untouched.
std::vector<CategoryRecord> expand_multilabel_with_negatives(
    const std::vector<CategoryRecord>& records, const std::vector<Paragraph>& paragraphs);

// Category label table: "id<TAB>c0..c6" with 0/1 cells.
void write_category_labels(const std::filesystem::path& path, const std::vector<CategoryRecord>& records);
std::vector<CategoryRecord> read_category_labels(const std::filesystem::path& path);

enum class SplitPart { Train, Validation, Test };

const char* to_string(SplitPart part);
std::optional<SplitPart> parse_split_part(std::string_view name);

struct SplitAssignment {
    std::vector<std::string> train_ids;
    std::vector<std::string> validation_ids;
    std::vector<std::string> test_ids;
    std::uint64_t seed = 0;

    const std::vector<std::string>& ids(SplitPart part) const;
    bool operator==(const SplitAssignment&) const = default;
};

// Seeded uniform split. Test gets round(N * test_fraction) paragraphs, then
// validation gets round(remaining * validation_fraction). Id lists keep corpus
// order.
SplitAssignment make_split(const std::vector<Paragraph>& paragraphs, std::uint64_t seed,
                           double test_fraction, double validation_fraction);

// Either a single two-column "id<TAB>split" file or three one-id-per-line
// files. The result must partition the corpus.
SplitAssignment load_split_file(const std::filesystem::path& path, const std::vector<Paragraph>& paragraphs);
SplitAssignment load_split_files(const std::filesystem::path& train, const std::filesystem::path& validation,
                                 const std::filesystem::path& test, const std::vector<Paragraph>& paragraphs);
void write_split_file(const std::filesystem::path& path, const SplitAssignment& split);

// Checks disjointness and coverage against the corpus ids.
void validate_partition(const SplitAssignment& split, const std::vector<Paragraph>& paragraphs);

struct BiasCorpRecord {
    std::string text;
    std::array<double, 3> ratings{};      // each in [0, 5]
    std::array<double, 3> confidences{};  // each in [1, 10]
};

struct SbicRecord {
    std::string text;
    double offensiveness = 0.0;  // [0, 1]
};

// Confidence-weighted mean rating; positive when strictly above 1.
double biascorp_weighted_score(const BiasCorpRecord& record);
bool derive_biascorp_label(const BiasCorpRecord& record);

inline constexpr double kSbicThreshold = 0.3;
bool derive_sbic_label(const SbicRecord& record);

}  // namespace pcl::corpus
