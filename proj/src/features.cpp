#include "pcl/features.hpp"

#include "pcl/error.hpp"
#include "pcl/text_io.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace pcl::features {

namespace detail {
extern const std::string_view kPosLexiconData;
}

namespace {

struct CodePoint {
    char32_t value;
    std::size_t length;
};

// Invalid sequences decode as U+FFFD consuming one byte, which classifies
// as a letter; tokenization stays total over arbitrary bytes.
CodePoint decode(std::string_view text, std::size_t pos) {
    const auto lead = static_cast<unsigned char>(text[pos]);
    if (lead < 0x80) return {lead, 1};
    std::size_t length = 0;
    char32_t value = 0;
    if ((lead & 0xE0) == 0xC0) {
        length = 2;
        value = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
        length = 3;
        value = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
        length = 4;
        value = lead & 0x07;
    } else {
        return {0xFFFD, 1};
    }
    if (pos + length > text.size()) return {0xFFFD, 1};
    for (std::size_t k = 1; k < length; ++k) {
        const auto cont = static_cast<unsigned char>(text[pos + k]);
        if ((cont & 0xC0) != 0x80) return {0xFFFD, 1};
        value = (value << 6) | (cont & 0x3F);
    }
    return {value, length};
}

bool is_space(char32_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == 0xA0 ||
           (c >= 0x2000 && c <= 0x200B) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
           c == 0x3000;
}

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2018 || c == 0x2019; }

bool is_word_char(char32_t c) {
    if (c < 0x80) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    }
    if (c >= 0xA1 && c <= 0xBF) return c == 0xAA || c == 0xB5 || c == 0xBA;
    if (c == 0xD7 || c == 0xF7) return false;
    if (c >= 0x2010 && c <= 0x205E) return false;
    if (c >= 0x20A0 && c <= 0x20CF) return false;  // currency
    if (c >= 0x3001 && c <= 0x303F) return false;
    return !is_space(c);
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto cp = decode(text, pos);
        if (is_space(cp.value)) {
            pos += cp.length;
            continue;
        }
        if (is_word_char(cp.value) || is_apostrophe(cp.value)) {
            const std::size_t begin = pos;
            std::size_t chars = 0;
            bool has_word_char = false;
            while (pos < text.size()) {
                const auto next = decode(text, pos);
                if (is_word_char(next.value)) {
                    has_word_char = true;
                } else if (!is_apostrophe(next.value)) {
                    break;
                }
                pos += next.length;
                ++chars;
            }
            if (has_word_char) {
                tokens.push_back(Token{std::string(text.substr(begin, pos - begin)), TokenKind::Word, begin, chars});
            } else {
                // A run of bare apostrophes is quoting, not a word.
                for (std::size_t p = begin; p < pos;) {
                    const auto q = decode(text, p);
                    tokens.push_back(Token{std::string(text.substr(p, q.length)), TokenKind::Punct, p, 1});
                    p += q.length;
                }
            }
            continue;
        }
        tokens.push_back(Token{std::string(text.substr(pos, cp.length)), TokenKind::Punct, pos, 1});
        pos += cp.length;
    }
    return tokens;
}

std::vector<SentenceSpan> split_sentences(std::string_view text) {
    std::vector<SentenceSpan> sentences;
    std::size_t begin = std::string_view::npos;  // first non-space byte of the open sentence
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto cp = decode(text, pos);
        if (begin == std::string_view::npos && !is_space(cp.value)) begin = pos;
        pos += cp.length;
        if (cp.length == 1 && is_terminator(static_cast<char>(cp.value)) && begin != std::string_view::npos) {
            const bool at_end = pos == text.size();
            if (at_end || is_space(decode(text, pos).value)) {
                sentences.push_back(SentenceSpan{begin, pos});
                begin = std::string_view::npos;
            }
        }
    }
    if (begin != std::string_view::npos) sentences.push_back(SentenceSpan{begin, text.size()});
    return sentences;
}

namespace {

PosClass class_from_letter(char c) {
    switch (c) {
    case 'n': return PosClass::Noun;
    case 'v': return PosClass::Verb;
    case 'a': return PosClass::Adjective;
    case 'r': return PosClass::Adverb;
    default: return PosClass::Other;
    }
}

const std::unordered_map<std::string, PosClass>& lexicon() {
    static const auto table = [] {
        std::unordered_map<std::string, PosClass> entries;
        std::string_view data = detail::kPosLexiconData;
        std::size_t start = 0;
        while (start < data.size()) {
            auto nl = data.find('\n', start);
            if (nl == std::string_view::npos) nl = data.size();
            const auto line = data.substr(start, nl - start);
            start = nl + 1;
            if (line.empty() || line.front() == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string_view::npos || tab + 1 >= line.size()) continue;
            entries.emplace(std::string(line.substr(0, tab)), class_from_letter(line[tab + 1]));
        }
        return entries;
    }();
    return table;
}

std::string normalize_word(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (std::size_t pos = 0; pos < word.size();) {
        const auto cp = decode(word, pos);
        if (cp.value == 0x2018 || cp.value == 0x2019) {
            out += '\'';
        } else {
            const char c = word[pos];
            out.append(word.substr(pos, cp.length));
            if (cp.length == 1 && c >= 'A' && c <= 'Z') out.back() = static_cast<char>(c - 'A' + 'a');
        }
        pos += cp.length;
    }
    return out;
}

bool ends_with(std::string_view word, std::string_view suffix) {
    return word.size() >= suffix.size() + 2 && word.substr(word.size() - suffix.size()) == suffix;
}

bool numeric(std::string_view word) {
    return std::all_of(word.begin(), word.end(), [](char c) { return (c >= '0' && c <= '9') || c == '\''; });
}

PosClass tag_by_suffix(std::string_view w) {
    if (ends_with(w, "ly")) return PosClass::Adverb;
    for (auto s : {"ous", "ful", "ive", "able", "ible", "less", "ical", "ish", "ic", "al"}) {
        if (ends_with(w, s)) return PosClass::Adjective;
    }
    for (auto s : {"ing", "ed", "ize", "ise", "ify"}) {
        if (ends_with(w, s)) return PosClass::Verb;
    }
    return PosClass::Noun;
}

// Stopwords: the widely used 179-word English list (NLTK), lowercase.
constexpr std::string_view kStopwordList[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've", "you'll",
    "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself", "she", "she's",
    "her", "hers", "herself", "it", "it's", "its", "itself", "they", "them", "their", "theirs",
    "themselves", "what", "which", "who", "whom", "this", "that", "that'll", "these", "those", "am",
    "is", "are", "was", "were", "be", "been", "being", "have", "has", "had", "having", "do", "does",
    "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because", "as", "until", "while",
    "of", "at", "by", "for", "with", "about", "against", "between", "into", "through", "during",
    "before", "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
    "under", "again", "further", "then", "once", "here", "there", "when", "where", "why", "how", "all",
    "any", "both", "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don", "don't",
    "should", "should've", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't",
    "couldn", "couldn't", "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't",
    "haven", "haven't", "isn", "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn",
    "needn't", "shan", "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
    "won't", "wouldn", "wouldn't",
};

const std::unordered_set<std::string_view>& stopwords() {
    static const std::unordered_set<std::string_view> set(std::begin(kStopwordList), std::end(kStopwordList));
    return set;
}

}  // namespace

std::size_t lexicon_size() { return lexicon().size(); }

PosClass tag_word(std::string_view word, bool sentence_initial) {
    const std::string w = normalize_word(word);
    if (w.empty()) return PosClass::Other;
    const auto& lex = lexicon();
    if (auto it = lex.find(w); it != lex.end()) return it->second;

    if (const auto apostrophe = w.find('\''); apostrophe != std::string::npos) {
        if (w.size() >= 3 && w.compare(w.size() - 3, 3, "n't") == 0) return PosClass::Other;
        const std::string base = w.substr(0, apostrophe);
        if (base.empty()) return PosClass::Other;
        if (auto it = lex.find(base); it != lex.end()) return it->second;
        return tag_word(word.substr(0, apostrophe), sentence_initial);
    }
    if (numeric(w)) return PosClass::Other;
    const char first = word.front();
    if (!sentence_initial && first >= 'A' && first <= 'Z') return PosClass::Noun;
    return tag_by_suffix(w);
}

bool is_stopword(std::string_view word) { return stopwords().count(normalize_word(word)) > 0; }

std::size_t stopword_count() { return stopwords().size(); }

FeatureVector extract_features(std::string_view text) {
    FeatureVector f;
    const auto tokens = tokenize(text);
    const auto sentences = split_sentences(text);

    std::size_t sentence = 0;
    std::size_t last_sentence_with_word = static_cast<std::size_t>(-1);
    double word_chars = 0.0;
    for (const auto& token : tokens) {
        if (token.kind == TokenKind::Punct) {
            if (token.text == "!") f[kExclamations] += 1;
            else if (token.text == "?") f[kQuestions] += 1;
            else if (token.text == ",") f[kCommas] += 1;
            continue;
        }
        while (sentence + 1 < sentences.size() && token.offset >= sentences[sentence].end) ++sentence;
        const bool initial = sentence != last_sentence_with_word;
        last_sentence_with_word = sentence;

        f[kWords] += 1;
        word_chars += static_cast<double>(token.chars);
        switch (tag_word(token.text, initial)) {
        case PosClass::Noun: f[kNouns] += 1; break;
        case PosClass::Verb: f[kVerbs] += 1; break;
        case PosClass::Adjective: f[kAdjectives] += 1; break;
        case PosClass::Adverb: f[kAdverbs] += 1; break;
        case PosClass::Other: break;
        }
        if (is_stopword(token.text)) f[kStopwords] += 1;
    }
    f[kSentences] = static_cast<double>(sentences.size());
    f[kAvgWordLength] = f[kWords] > 0 ? word_chars / f[kWords] : 0.0;
    f[kAvgSentenceLength] = f[kSentences] > 0 ? f[kWords] / f[kSentences] : 0.0;
    return f;
}

void write_feature_cache(const std::filesystem::path& path,
                         const std::vector<std::pair<std::string, FeatureVector>>& rows) {
    std::string out = "id";
    for (auto name : kFeatureNames) {
        out += '\t';
        out += name;
    }
    out += '\n';
    for (const auto& [id, f] : rows) {
        out += id;
        for (double v : f.values) out += '\t' + io::format_fixed(v, 6);
        out += '\n';
    }
    io::write_file(path, out);
}

std::map<std::string, FeatureVector> read_feature_cache(const std::filesystem::path& path) {
    const auto lines = io::read_lines(path);
    if (lines.empty()) throw ParseError(path.string(), 0, "empty feature cache (header missing)");
    const auto header = io::split_tabs(lines[0]);
    if (header.size() != kFeatureCount + 1 || header[0] != "id") {
        throw ParseError(path.string(), 1, "unexpected feature cache header");
    }
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
        if (header[k + 1] != kFeatureNames[k]) {
            throw ParseError(path.string(), 1, "feature column " + std::to_string(k + 1) + " should be " +
                                                   std::string(kFeatureNames[k]));
        }
    }
    std::map<std::string, FeatureVector> cache;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = io::split_tabs(lines[i]);
        if (fields.size() != kFeatureCount + 1) {
            throw ParseError(path.string(), i + 1, "expected " + std::to_string(kFeatureCount + 1) + " columns");
        }
        FeatureVector f;
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            if (!io::parse_double(fields[k + 1], f[k]) || f[k] < 0.0) {
                throw ParseError(path.string(), i + 1, "bad value for " + std::string(kFeatureNames[k]));
            }
        }
        if (!cache.emplace(std::string(fields[0]), f).second) {
            throw ParseError(path.string(), i + 1, "duplicate id '" + std::string(fields[0]) + "'");
        }
    }
    return cache;
}

}  // namespace pcl::features
