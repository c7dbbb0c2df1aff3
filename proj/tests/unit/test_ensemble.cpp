#include "doctest.h"

#include "pcl/ensemble.hpp"
#include "pcl/error.hpp"
#include "pcl/random.hpp"
#include "pcl/text_io.hpp"
#include "synthetic.hpp"

#include <algorithm>

using namespace pcl;
using namespace pcl::ensemble;

namespace {

ScoreMatrix matrix(std::string name, std::vector<std::string> ids, std::vector<double> scores, std::size_t columns = 1) {
    ScoreMatrix m;
    m.model_id = std::move(name);
    m.ids = std::move(ids);
    m.columns = columns;
    m.scores = std::move(scores);
    return m;
}

ScoreMatrix random_matrix(SeededRng& rng, const std::string& name, std::size_t rows, std::size_t columns) {
    std::vector<std::string> ids;
    std::vector<double> scores;
    for (std::size_t r = 0; r < rows; ++r) {
        ids.push_back("p" + std::to_string(r));
        for (std::size_t c = 0; c < columns; ++c) scores.push_back(rng.uniform());
    }
    return matrix(name, ids, scores, columns);
}

}  // namespace

TEST_CASE("score file parsing") {
    const auto m = parse_score_text("id\tscore\na\t0.25\nb\t1\n", "s.tsv", "m");
    CHECK(m.ids == std::vector<std::string>{"a", "b"});
    CHECK(m.scores == std::vector<double>{0.25, 1.0});
    const auto wide = parse_score_text("id\tc0\tc1\tc2\tc3\tc4\tc5\tc6\nx\t0\t0.1\t0.2\t0.3\t0.4\t0.5\t0.6\n", "w", "w");
    CHECK(wide.columns == 7);
    CHECK(wide.at(0, 6) == 0.6);
    CHECK(wide.column(3) == std::vector<double>{0.3});
}

TEST_CASE("score file errors") {
    try {
        parse_score_text("id\tscore\na\t0.5\nb\t1.5\n", "s.tsv", "m");
        FAIL("expected a range error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("s.tsv:3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_score_text("id\tscore\na\t0.5\na\t0.1\n", "s", "m"), ValidationError);
    CHECK_THROWS_AS(parse_score_text("id\tscore\na\t0.5\t0.1\n", "s", "m"), ValidationError);
    CHECK_THROWS_AS(parse_score_text("id\tscore\na\tabc\n", "s", "m"), ParseError);
    CHECK_THROWS_AS(parse_score_text("id\tprob\na\t0.5\n", "s", "m"), ParseError);
    CHECK_THROWS_AS(parse_score_text("", "s", "m"), ParseError);
    CHECK_THROWS_AS(parse_score_text("id\tc0\tc1\na\t0.5\t0.5\n", "s", "m"), ParseError);
}

TEST_CASE("score files round-trip byte for byte") {
    const auto dir = testing::scratch_dir("score_files");
    const auto m = matrix("alpha", {"a", "b", "c"}, {0.1, 0.123456789, 1.0});
    write_score_file(dir / "alpha.tsv", m);
    const auto back = validate_score_file(dir / "alpha.tsv");
    CHECK(back.model_id == "alpha");
    CHECK(back.ids == m.ids);
    CHECK(format_score_file(back) == io::read_file(dir / "alpha.tsv"));
}

TEST_CASE("single member is returned exactly") {
    SeededRng rng(1);
    const auto m = random_matrix(rng, "m", 20, 7);
    const auto r = average({m});
    CHECK(r.ids == m.ids);
    CHECK(r.scores == m.scores);
    CHECK(r.columns == 7);
}

TEST_CASE("three-member mean") {
    const auto r = average({matrix("a", {"x"}, {0.2}), matrix("b", {"x"}, {0.4}), matrix("c", {"x"}, {0.9})});
    CHECK(r.scores[0] == doctest::Approx(0.5));
    CHECK(r.member_models == std::vector<std::string>{"a", "b", "c"});
    CHECK(mean_probability({0.2, 0.4, 0.9}) == doctest::Approx(0.5));
    CHECK(mean_probability({0.3, 0.7}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(mean_probability({}), ValidationError);
}

TEST_CASE("ensemble properties on random matrices") {
    SeededRng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng.below(5);
        const std::size_t columns = rng.below(2) ? 7 : 1;
        std::vector<ScoreMatrix> members;
        for (std::size_t j = 0; j < k; ++j) members.push_back(random_matrix(rng, "m" + std::to_string(j), 15, columns));
        const auto r = average(members);

        auto shuffled = members;
        rng.shuffle(shuffled);
        CHECK(average(shuffled).scores == r.scores);

        CHECK(average(std::vector<ScoreMatrix>(3, members[0])).scores == members[0].scores);

        for (std::size_t i = 0; i < r.scores.size(); ++i) {
            double lo = 1.0, hi = 0.0;
            for (const auto& m : members) {
                lo = std::min(lo, m.scores[i]);
                hi = std::max(hi, m.scores[i]);
            }
            CHECK(r.scores[i] >= lo);
            CHECK(r.scores[i] <= hi);
        }
    }
}

TEST_CASE("alignment modes") {
    const auto a = matrix("a", {"x", "y", "z"}, {0.1, 0.2, 0.3});
    const auto b = matrix("b", {"z", "y", "w"}, {0.5, 0.6, 0.7});
    CHECK_THROWS_AS(average({a, b}), ConsistencyError);
    const auto r = average({a, b}, Alignment::Lenient);
    CHECK(r.ids == std::vector<std::string>{"y", "z"});
    CHECK(r.scores[0] == doctest::Approx(0.4));
    CHECK(r.scores[1] == doctest::Approx(0.4));
    CHECK_FALSE(r.warnings.empty());

    const auto reordered = matrix("c", {"z", "x", "y"}, {0.3, 0.1, 0.2});
    const auto same = average({a, reordered});
    CHECK(same.ids == a.ids);
    CHECK(same.scores == a.scores);

    CHECK_THROWS_AS(average({a, matrix("d", {"q"}, {0.5})}, Alignment::Lenient), ConsistencyError);
    CHECK_THROWS_AS(average({a, matrix("e", {"x"}, {0, 0, 0, 0, 0, 0, 0}, 7)}), ValidationError);
    CHECK_THROWS_AS(average({}), ValidationError);
}

TEST_CASE("matrix validation") {
    CHECK_THROWS_AS(validate_matrix(matrix("m", {"a"}, {0.1, 0.2})), ValidationError);
    CHECK_THROWS_AS(validate_matrix(matrix("m", {"a", "a"}, {0.1, 0.2})), ValidationError);
    CHECK_THROWS_AS(validate_matrix(matrix("m", {"a"}, {-0.1})), ValidationError);
    CHECK_THROWS_AS(validate_matrix(matrix("m", {"a"}, {0.1, 0.2}, 2)), ValidationError);
    CHECK(average({matrix("a", {"x"}, {0.5})}).as_matrix().model_id == "ensemble");
}
