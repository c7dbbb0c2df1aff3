#include "doctest.h"

#include "pcl/error.hpp"
#include "pcl/random.hpp"
#include "pcl/text_io.hpp"
#include "synthetic.hpp"

#include <cmath>
#include <set>

using namespace pcl;

TEST_CASE("split_tabs keeps empty fields") {
    const auto f = io::split_tabs("a\t\tb\t");
    REQUIRE(f.size() == 4);
    CHECK(f[0] == "a");
    CHECK(f[1].empty());
    CHECK(f[2] == "b");
    CHECK(f[3].empty());
}

TEST_CASE("chomp strips one carriage return") {
    CHECK(io::chomp("abc\r") == "abc");
    CHECK(io::chomp("abc") == "abc");
}

TEST_CASE("cell escaping round-trips") {
    const std::string raw = "tab\there\nline\\slash\r";
    const auto cell = io::escape_cell(raw);
    CHECK(cell.find('\t') == std::string::npos);
    CHECK(cell.find('\n') == std::string::npos);
    CHECK(io::unescape_cell(cell) == raw);
}

TEST_CASE("strict number parsing") {
    double d = 0;
    long long i = 0;
    CHECK(io::parse_double("0.25", d));
    CHECK(d == 0.25);
    CHECK_FALSE(io::parse_double("0.25x", d));
    CHECK_FALSE(io::parse_double("", d));
    CHECK(io::parse_int("-3", i));
    CHECK(i == -3);
    CHECK_FALSE(io::parse_int("3.0", i));
}

TEST_CASE("format_exact round-trips and stays short") {
    CHECK(io::format_exact(0.49) == "0.49");
    CHECK(io::format_exact(0.7) == "0.7");
    SeededRng rng(5);
    for (int k = 0; k < 1000; ++k) {
        const double v = rng.uniform();
        double back = 0;
        REQUIRE(io::parse_double(io::format_exact(v), back));
        CHECK(back == v);
    }
}

TEST_CASE("format_fixed rounds") {
    CHECK(io::format_fixed(0.6048, 2) == "0.60");
    CHECK(io::format_fixed(60.4836, 2) == "60.48");
}

TEST_CASE("fnv1a64 known vectors") {
    CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(io::hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("file helpers") {
    const auto dir = testing::scratch_dir("text_io");
    io::write_file(dir / "sub" / "x.txt", "one\r\ntwo\n");
    const auto lines = io::read_lines(dir / "sub" / "x.txt");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "one");
    CHECK(io::read_file(dir / "sub" / "x.txt") == "one\r\ntwo\n");
    CHECK_THROWS_AS(io::read_file(dir / "missing.txt"), IoError);
}

TEST_CASE("trim and lower") {
    CHECK(io::trim("  a b \t") == "a b");
    CHECK(io::to_lower_ascii("HeLLo") == "hello");
}

TEST_CASE("SeededRng is reproducible and shuffles to a permutation") {
    SeededRng a(42), b(42);
    for (int k = 0; k < 10; ++k) CHECK(a.next() == b.next());
    std::vector<int> v(50);
    for (int k = 0; k < 50; ++k) v[k] = k;
    SeededRng r(7);
    r.shuffle(v);
    CHECK(std::set<int>(v.begin(), v.end()).size() == 50);
    for (int k = 0; k < 1000; ++k) {
        CHECK(r.below(3) < 3);
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
