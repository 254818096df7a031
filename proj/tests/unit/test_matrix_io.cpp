#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "generators.hpp"
#include "refnet/sparse_matrix.hpp"

using namespace refnet;

namespace {

std::size_t parse_error_line(auto fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

const char* small_mps = R"(NAME          TINY
ROWS
 N  obj
 E  r1
COLUMNS
    x         obj       3              r1        1
    y         r1        -1
RHS
    rhs       r1        1
ENDATA
)";

} // namespace

TEST_CASE("MPS with an objective and one equality row") {
    const auto a = parse_mps(small_mps);
    CHECK(a.n_rows() == 1);
    CHECK(a.n_cols() == 2);
    CHECK(a.at(0, 0) == 1);
    CHECK(a.at(0, 1) == -1);
    CHECK(a.row_names() == std::vector<std::string>{"r1"});
    CHECK(a.col_names() == std::vector<std::string>{"x", "y"});
    CHECK(a.check_consistency());
}

TEST_CASE("MPS values are stored exactly") {
    const auto a = parse_mps("NAME\nROWS\n L c\nCOLUMNS\n x c 2.5e1\nENDATA\n");
    CHECK(a.at(0, 0) == Rational(25));
    const auto b = parse_mps("NAME\nROWS\n G c\nCOLUMNS\n x c 0.1\nENDATA\n");
    CHECK(b.at(0, 0) == Rational(1, 10));
}

TEST_CASE("MPS sections that do not affect the matrix are skipped") {
    const char* text = R"(* comment line
NAME  EXTRA  TOKENS
ROWS
 N  cost
 L  a
 G  b
 E  c
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    x  a  1  b  2
    x  cost  4
    MARKER                 'MARKER'                 'INTEND'
    y  c  -3
RHS
    rhs  a  5
RANGES
    rng  b  2
BOUNDS
 UP bnd  x  4
ENDATA
)";
    const auto a = parse_mps(text);
    CHECK(a.n_rows() == 3);
    CHECK(a.n_cols() == 2);
    CHECK(a.nnz() == 3);
    CHECK(a.at(1, 0) == 2);
    CHECK(a.at(2, 1) == -3);
}

TEST_CASE("MPS errors carry a line number") {
    CHECK(parse_error_line([] { parse_mps("NAME\nROWS\n E r\nCOLUMNS\n x r 1\n"); }) > 0); // missing ENDATA
    CHECK(parse_error_line([] { parse_mps("NAME\nROWS\n E r\nCOLUMNS\n x q 1\nENDATA\n"); }) == 5);
    CHECK(parse_error_line([] { parse_mps("NAME\nROWS\n E r\nCOLUMNS\n x r 1.2.3\nENDATA\n"); }) == 5);
    CHECK(parse_error_line([] { parse_mps("NAME\nROWS\n E r\nBOGUS\nENDATA\n"); }) == 4);
    CHECK(parse_error_line([] { parse_mps("NAME\nROWS\n E r\nCOLUMNS\n x r 1\n x r 2\nENDATA\n"); }) == 6);
}

TEST_CASE("coordinate format") {
    SUBCASE("diagonal") {
        const auto a = parse_coord("2 2 2\n1 1 1\n2 2 -1\n");
        CHECK(a.at(0, 0) == 1);
        CHECK(a.at(1, 1) == -1);
        CHECK(a.at(0, 1) == 0);
    }
    SUBCASE("zero value is rejected") {
        CHECK_THROWS_AS(parse_coord("1 1 1\n1 1 0\n"), ParseError);
    }
    SUBCASE("three entries") {
        const auto a = parse_coord("2 2 3\n1 1 1\n1 2 1\n2 1 1\n");
        CHECK(a.at(0, 0) == 1);
        CHECK(a.at(0, 1) == 1);
        CHECK(a.at(1, 0) == 1);
        CHECK(a.at(1, 1) == 0);
    }
    SUBCASE("errors") {
        CHECK(parse_error_line([] { parse_coord("1 1 1\n2 1 1\n"); }) == 2);
        CHECK(parse_error_line([] { parse_coord("2 2 2\n1 1 1\n1 1 2\n"); }) == 3);
        CHECK_THROWS_AS(parse_coord("2 2 2\n1 1 1\n"), ParseError);
        CHECK_THROWS_AS(parse_coord("% only a comment\n"), ParseError);
    }
    SUBCASE("comments and fractions") {
        const auto a = parse_coord("% header comment\n1 2 2\n1 1 1/3\n% mid\n1 2 -2.5\n");
        CHECK(a.at(0, 0) == Rational(1, 3));
        CHECK(a.at(0, 1) == Rational(-5, 2));
    }
}

TEST_CASE("coordinate round trip") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto a = testgen::random_matrix(rng, 1 + rng.below(8), 1 + rng.below(8), 0.4, 0.3);
        const auto b = parse_coord(to_coord_string(a));
        CHECK(a == b);
        CHECK(b.check_consistency());
    }
    const auto a = parse_coord("2 3 2\n2 3 7/5\n1 1 -4\n");
    CHECK(parse_coord(to_coord_string(a)) == a);
}

TEST_CASE("row classification") {
    CHECK(classify_rows(parse_coord("2 2 3\n1 1 1\n1 2 -1\n2 1 2\n")).unit == std::vector<bool>{true, false});
    CHECK(classify_rows(parse_coord("2 1 1\n2 1 1\n")).unit == std::vector<bool>{true, true});
    CHECK(classify_rows(parse_coord("1 3 3\n1 1 1\n1 2 1\n1 3 1\n")).unit == std::vector<bool>{true});

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const auto a = testgen::random_matrix(rng, 6, 6, 0.5, 0.5);
        std::vector<bool> scan(a.n_rows(), true);
        for (const auto& e : a.entries()) {
            if (e.value != 1 && e.value != -1) scan[e.row] = false;
        }
        CHECK(classify_rows(a).unit == scan);
    }
}

TEST_CASE("network matrix check") {
    CHECK(is_network_matrix(parse_coord("2 2 3\n1 1 1\n2 1 -1\n2 2 1\n")));
    CHECK_FALSE(is_network_matrix(parse_coord("2 1 2\n1 1 1\n2 1 1\n")));
    CHECK_FALSE(is_network_matrix(parse_coord("1 1 1\n1 1 2\n")));
}

TEST_CASE("reading files") {
    CHECK_THROWS_AS(read_matrix("/nonexistent/file.mps"), std::system_error);
    CHECK(guess_format("a/B.MPS") == MatrixFormat::mps);
    CHECK(guess_format("a/b.coord") == MatrixFormat::coord);

    const std::filesystem::path dir = REFNET_DATA_DIR;
    const auto afiro = read_matrix(dir / "netlib" / "AFIRO.mps");
    CHECK(afiro.n_rows() == 27);
    CHECK(afiro.n_cols() == 32);
    CHECK(afiro.nnz() == 83);
    CHECK(afiro.check_consistency());
}

TEST_CASE("Netlib row counts match the declared L/G/E rows") {
    const std::filesystem::path dir = std::filesystem::path(REFNET_DATA_DIR) / "netlib";
    for (const char* name : {"AFIRO", "ADLITTLE", "ISRAEL", "STAIR"}) {
        CAPTURE(name);
        std::ifstream in(dir / (std::string(name) + ".mps"));
        REQUIRE(in);
        std::string line;
        std::size_t declared = 0;
        bool in_rows = false;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '*') continue;
            if (line[0] != ' ') {
                in_rows = line.rfind("ROWS", 0) == 0;
                continue;
            }
            std::istringstream tok(line);
            std::string type;
            tok >> type;
            if (in_rows && type != "N") ++declared;
        }
        CHECK(read_matrix(dir / (std::string(name) + ".mps")).n_rows() == declared);
    }
}
