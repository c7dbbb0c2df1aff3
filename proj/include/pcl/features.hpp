#pragma once

// Sentence-level text features: counts of words, sentences and punctuation,
// average lengths, coarse part-of-speech counts and stopword count.

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pcl::features {

enum class TokenKind { Word, Punct };

struct Token {
    std::string text;
    TokenKind kind = TokenKind::Word;
    std::size_t offset = 0;  // byte offset into the source text
    std::size_t chars = 0;   // code points

    bool operator==(const Token&) const = default;
};

// Words are maximal runs of letters, digits and apostrophes (a run made only
// of apostrophes is punctuation). Every other non-space code point becomes a
// single-character punctuation token. Non-ASCII code points count as letters
// except for the general-punctuation block; U+2018/U+2019 act as apostrophes.
std::vector<Token> tokenize(std::string_view text);

struct SentenceSpan {
    std::size_t begin = 0;  // byte offsets, [begin, end)
    std::size_t end = 0;

    bool operator==(const SentenceSpan&) const = default;
};

// A sentence ends at '.', '!' or '?' followed by whitespace or end of text.
// Trailing text without a terminator is one more sentence. Segments holding
// only whitespace are not sentences.
std::vector<SentenceSpan> split_sentences(std::string_view text);

enum class PosClass { Noun, Verb, Adjective, Adverb, Other };

// Coarse tag for a word token. sentence_initial disables the
// capitalised-unknown-word-is-a-proper-noun rule.
PosClass tag_word(std::string_view word, bool sentence_initial);

// Size of the bundled lexicon, exposed for diagnostics and tests.
std::size_t lexicon_size();

// Case-insensitive match against the bundled English stopword list.
bool is_stopword(std::string_view word);
std::size_t stopword_count();

inline constexpr std::size_t kFeatureCount = 12;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "n_words",   "n_sentences", "n_exclamations", "n_questions", "n_commas",     "avg_word_length",
    "avg_sentence_length", "n_nouns", "n_verbs", "n_adjectives", "n_adverbs", "n_stopwords",
};

enum FeatureIndex : std::size_t {
    kWords,
    kSentences,
    kExclamations,
    kQuestions,
    kCommas,
    kAvgWordLength,
    kAvgSentenceLength,
    kNouns,
    kVerbs,
    kAdjectives,
    kAdverbs,
    kStopwords,
};

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    bool operator==(const FeatureVector&) const = default;
};

FeatureVector extract_features(std::string_view text);

// Cache file: header "id" + feature names, one row per paragraph, values
// printed with 6 decimals.
void write_feature_cache(const std::filesystem::path& path,
                         const std::vector<std::pair<std::string, FeatureVector>>& rows);
std::map<std::string, FeatureVector> read_feature_cache(const std::filesystem::path& path);

}  // namespace pcl::features
