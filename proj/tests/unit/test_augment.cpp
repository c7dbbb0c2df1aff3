#include "doctest.h"

#include "pcl/augment.hpp"
#include "pcl/corpus.hpp"
#include "pcl/error.hpp"
#include "pcl/text_io.hpp"
#include "synthetic.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <thread>

using namespace pcl;
using namespace pcl::augment;

namespace {

std::vector<corpus::Paragraph> positives(std::size_t n, std::size_t negatives = 0) {
    std::vector<corpus::Paragraph> out;
    for (std::size_t i = 0; i < n + negatives; ++i) {
        out.push_back(corpus::Paragraph::make("p" + std::to_string(i + 1), "@@1", "poor-families", "us",
                                              "They need our help now number " + std::to_string(i + 1),
                                              i < n ? 4 : 0));
    }
    return out;
}

class FailingTranslator final : public Translator {
public:
    std::string translate(std::string_view text, std::string_view, std::string_view) override {
        if (text.find("number 2") != std::string_view::npos) throw std::runtime_error("service down");
        return std::string(text) + " again";
    }
    std::string id() const override { return "failing"; }
};

// Local MT service stub on a free port.
class StubServer {
public:
    explicit StubServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
        server_.Post("/translate", std::move(handler));
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubServer() {
        server_.stop();
        thread_.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/translate"; }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace

TEST_CASE("identity translator with dedup yields nothing") {
    IdentityTranslator identity;
    TranslationCache cache;
    const auto ps = positives(5);
    const auto r = augment_corpus(ps, identity, {}, cache);
    CHECK(r.samples.empty());
    CHECK(r.duplicates_dropped == 5);
    CHECK(r.failures.empty());
}

TEST_CASE("reversing twice restores the text") {
    ReversingTranslator reverse;
    const auto p = positives(1)[0];
    const auto s = backtranslate(p, reverse);
    CHECK(s.text == p.text);
    CHECK(reverse.translate("ab\xC3\xA9", "en", "fr") == "\xC3\xA9" "ba");
}

TEST_CASE("paraphrasing positives gives one sample each with labels kept") {
    WordShuffleTranslator shuffle;
    CountingTranslator counting(shuffle);
    TranslationCache cache;
    const auto ps = positives(10, 6);
    const auto r = augment_corpus(ps, counting, {}, cache);
    REQUIRE(r.samples.size() == 10);
    CHECK(r.attempted == 10);
    CHECK(counting.calls() == 20);
    for (std::size_t i = 0; i < 10; ++i) {
        const auto& s = r.samples[i];
        CHECK(s.source_id == ps[i].id);
        CHECK(s.id() == ps[i].id + "~bt-fr");
        CHECK(s.original_label == ps[i].original_label);
        CHECK(s.soft_label == ps[i].soft_label);
        CHECK(s.binary_label == ps[i].binary_label);
        CHECK(s.text != ps[i].text);
        CHECK(s.translator_id == "word-shuffle");
    }
}

TEST_CASE("policy all also covers negatives") {
    WordShuffleTranslator shuffle;
    TranslationCache cache;
    AugmentOptions options;
    options.policy = Policy::All;
    CHECK(augment_corpus(positives(3, 4), shuffle, options, cache).samples.size() == 7);
    CHECK(parse_policy("all") == Policy::All);
    CHECK(parse_policy("positives-only") == Policy::PositivesOnly);
    CHECK_FALSE(parse_policy("some").has_value());
}

TEST_CASE("second run is served from the cache") {
    const auto dir = testing::scratch_dir("augment_cache");
    WordShuffleTranslator shuffle;
    const auto ps = positives(6);
    std::vector<AugmentedSample> first;
    {
        TranslationCache cache(dir / "cache.tsv");
        first = augment_corpus(ps, shuffle, {}, cache).samples;
    }
    CountingTranslator counting(shuffle);
    TranslationCache reloaded(dir / "cache.tsv");
    CHECK(reloaded.size() == 6);
    const auto second = augment_corpus(ps, counting, {}, reloaded);
    CHECK(counting.calls() == 0);
    CHECK(second.cache_hits == 6);
    CHECK(second.samples == first);
}

TEST_CASE("dedup reaches a fixed point") {
    ReversingTranslator reverse;
    WordShuffleTranslator shuffle;
    TranslationCache cache;
    const auto ps = positives(8);
    const auto kept = augment_corpus(ps, reverse, {}, cache);
    CHECK(kept.samples.empty());
    CHECK(kept.duplicates_dropped == 8);
    // Re-running over the survivors changes nothing further.
    TranslationCache cache2;
    const auto once = augment_corpus(ps, shuffle, {}, cache2);
    const auto twice = augment_corpus(ps, shuffle, {}, cache2);
    CHECK(once.samples == twice.samples);
    CHECK(twice.duplicates_dropped == once.duplicates_dropped);
}

TEST_CASE("per-sample failures are collected") {
    FailingTranslator failing;
    TranslationCache cache;
    const auto r = augment_corpus(positives(4), failing, {}, cache);
    CHECK(r.samples.size() == 3);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].source_id == "p2");
    CHECK(r.failures[0].message.find("service down") != std::string::npos);
}

TEST_CASE("backtranslate input checks") {
    IdentityTranslator identity;
    auto p = positives(1)[0];
    CHECK_THROWS_AS(backtranslate(p, identity, "en"), ValidationError);
    p.text.clear();
    CHECK_THROWS_AS(backtranslate(p, identity), ValidationError);
}

TEST_CASE("whitespace normalization") {
    CHECK(normalize_whitespace("  a \t b\n\nc ") == "a b c");
    CHECK(normalize_whitespace("   ").empty());
}

TEST_CASE("augmented corpus and provenance files") {
    const auto dir = testing::scratch_dir("augment_write");
    WordShuffleTranslator shuffle;
    TranslationCache cache;
    const auto ps = positives(3);
    const auto r = augment_corpus(ps, shuffle, {}, cache);
    write_augmented(dir / "aug.tsv", r.samples, ps);
    const auto back = corpus::parse_binary_corpus(dir / "aug.tsv").paragraphs;
    REQUIRE(back.size() == 3);
    CHECK(back[0].id == "p1~bt-fr");
    CHECK(back[0].original_label == 4);
    const auto prov = io::read_lines(dir / "aug.tsv.provenance.tsv");
    REQUIRE(prov.size() == 4);
    CHECK(prov[1] == "p1~bt-fr\tp1\tfr\tword-shuffle");
}

TEST_CASE("HTTP translator talks JSON to the service") {
    std::atomic<int> requests{0};
    StubServer server([&](const httplib::Request& req, httplib::Response& res) {
        ++requests;
        const auto body = nlohmann::json::parse(req.body);
        const std::string text = body["text"];
        const std::string target = body["target"];
        res.set_content(nlohmann::json{{"text", text + " [" + target + "]"}}.dump(), "application/json");
    });
    HttpTranslator http({server.url(), std::chrono::milliseconds(2000), 0});
    CHECK(http.id() == "http:" + server.url());
    const auto s = backtranslate(positives(1)[0], http, "de");
    CHECK(s.text == positives(1)[0].text + " [de] [en]");
    CHECK(requests == 2);
}

TEST_CASE("HTTP translator retries server errors and reports failure") {
    std::atomic<int> requests{0};
    StubServer server([&](const httplib::Request&, httplib::Response& res) {
        ++requests;
        res.status = 503;
    });
    HttpTranslator http({server.url(), std::chrono::milliseconds(2000), 2});
    CHECK_THROWS(http.translate("x", "en", "fr"));
    CHECK(requests == 3);
}

TEST_CASE("HTTP translator does not retry client errors or bad bodies") {
    std::atomic<int> requests{0};
    StubServer server([&](const httplib::Request& req, httplib::Response& res) {
        ++requests;
        if (req.body.find("bad") != std::string::npos) res.set_content("not json", "text/plain");
        else res.status = 400;
    });
    HttpTranslator http({server.url(), std::chrono::milliseconds(2000), 2});
    CHECK_THROWS(http.translate("x", "en", "fr"));
    CHECK(requests == 1);
    CHECK_THROWS(http.translate("bad", "en", "fr"));
    CHECK(requests == 2);
}

TEST_CASE("HTTP translator URL checks") {
    CHECK_THROWS_AS(HttpTranslator({"localhost:5000", std::chrono::milliseconds(10), 0}), UsageError);
    CHECK_THROWS_AS(HttpTranslator({"https://x/translate", std::chrono::milliseconds(10), 0}), UsageError);
}
