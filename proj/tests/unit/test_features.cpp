#include "doctest.h"

#include "pcl/error.hpp"
#include "pcl/features.hpp"
#include "synthetic.hpp"

using namespace pcl;
using namespace pcl::features;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) out.push_back(t.text);
    return out;
}

bool is_count(std::size_t k) { return k != kAvgWordLength && k != kAvgSentenceLength; }

}  // namespace

TEST_CASE("tokenizer splits words and punctuation") {
    const auto t = tokenize("Hello, world!");
    CHECK(texts(t) == std::vector<std::string>{"Hello", ",", "world", "!"});
    CHECK(t[0].kind == TokenKind::Word);
    CHECK(t[1].kind == TokenKind::Punct);
    CHECK(t[2].offset == 7);
    CHECK(texts(tokenize("don't stop")) == std::vector<std::string>{"don't", "stop"});
    CHECK(texts(tokenize("don\xE2\x80\x99t")) == std::vector<std::string>{"don\xE2\x80\x99t"});
    CHECK(tokenize("caf\xC3\xA9")[0].chars == 4);
    CHECK(tokenize("").empty());
    CHECK(tokenize("''")[0].kind == TokenKind::Punct);
}

TEST_CASE("sentence splitter") {
    CHECK(split_sentences("A. B!").size() == 2);
    CHECK(split_sentences("no terminator").size() == 1);
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("   ").empty());
    CHECK(split_sentences("3.5 percent rose.").size() == 1);
    const auto s = split_sentences("One. Two");
    REQUIRE(s.size() == 2);
    CHECK(s[0].begin == 0);
    CHECK(s[1].end == 8);
}

TEST_CASE("features of a greeting") {
    const auto f = extract_features("Hello, world!");
    CHECK(f[kWords] == 2);
    CHECK(f[kSentences] == 1);
    CHECK(f[kExclamations] == 1);
    CHECK(f[kQuestions] == 0);
    CHECK(f[kCommas] == 1);
    CHECK(f[kAvgWordLength] == doctest::Approx(5.0));
    CHECK(f[kAvgSentenceLength] == doctest::Approx(2.0));
}

TEST_CASE("features of repeated questions") {
    const auto f = extract_features("Why? Why? Why?");
    CHECK(f[kQuestions] == 3);
    CHECK(f[kSentences] == 3);
    CHECK(f[kAvgSentenceLength] == doctest::Approx(1.0));
}

TEST_CASE("empty text has all-zero features") {
    CHECK(extract_features("") == FeatureVector{});
}

TEST_CASE("counts add up over concatenated sentences") {
    const auto corpus = testing::make_synthetic({40, 0.3, 9});
    for (std::size_t i = 0; i + 1 < corpus.paragraphs.size(); ++i) {
        const auto& a = corpus.paragraphs[i].text;
        const auto& b = corpus.paragraphs[i + 1].text;
        const auto fa = extract_features(a);
        const auto fb = extract_features(b);
        const auto fab = extract_features(a + " " + b);
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            if (is_count(k)) CHECK(fab[k] == fa[k] + fb[k]);
        }
    }
}

TEST_CASE("repeating a paragraph scales counts and keeps averages") {
    const auto corpus = testing::make_synthetic({20, 0.3, 4});
    for (const auto& p : corpus.paragraphs) {
        const auto f1 = extract_features(p.text);
        const auto f3 = extract_features(p.text + " " + p.text + " " + p.text);
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            if (is_count(k)) CHECK(f3[k] == 3 * f1[k]);
            else CHECK(f3[k] == doctest::Approx(f1[k]));
        }
    }
}

TEST_CASE("stopwords and tags never exceed the word count") {
    const auto corpus = testing::make_synthetic({50, 0.3, 2});
    for (const auto& p : corpus.paragraphs) {
        const auto f = extract_features(p.text);
        CHECK(f[kStopwords] <= f[kWords]);
        CHECK(f[kNouns] + f[kVerbs] + f[kAdjectives] + f[kAdverbs] <= f[kWords]);
        for (double v : f.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("stopword list and lexicon") {
    CHECK(is_stopword("the"));
    CHECK(is_stopword("The"));
    CHECK_FALSE(is_stopword("council"));
    CHECK(stopword_count() > 100);
    CHECK(lexicon_size() > 1000);
}

TEST_CASE("coarse tagger") {
    CHECK(tag_word("house", false) == PosClass::Noun);
    CHECK(tag_word("quickly", false) == PosClass::Adverb);
    CHECK(tag_word("beautiful", false) == PosClass::Adjective);
    CHECK(tag_word("Zanzibarian", false) == PosClass::Noun);
    CHECK(tag_word("the", false) == PosClass::Other);
}

TEST_CASE("feature cache round-trips at six decimals") {
    const auto dir = testing::scratch_dir("feature_cache");
    std::vector<std::pair<std::string, FeatureVector>> rows = {{"a", extract_features("Hello, world!")},
                                                               {"b", extract_features("Why? Why? Why?")}};
    write_feature_cache(dir / "f.tsv", rows);
    const auto back = read_feature_cache(dir / "f.tsv");
    REQUIRE(back.size() == 2);
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
        CHECK(back.at("a")[k] == doctest::Approx(rows[0].second[k]).epsilon(1e-6));
    }
}
