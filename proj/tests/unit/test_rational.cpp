#include <doctest.h>

#include "refnet/rational.hpp"

using refnet::parse_rational;
using refnet::Rational;

TEST_CASE("decimal and scientific numerals are exact") {
    CHECK(*parse_rational("2.5e1") == Rational(25));
    CHECK(*parse_rational("0.1") == Rational(1, 10));
    CHECK(*parse_rational("-1.25") == Rational(-5, 4));
    CHECK(*parse_rational("1e-3") == Rational(1, 1000));
    CHECK(*parse_rational(".5") == Rational(1, 2));
    CHECK(*parse_rational("5.") == Rational(5));
    CHECK(*parse_rational("+7") == Rational(7));
    CHECK(*parse_rational("1.5D2") == Rational(150));
    CHECK(*parse_rational("0.333333333333333314829616256247") ==
          Rational(boost::multiprecision::mpz_int("333333333333333314829616256247"),
                   boost::multiprecision::mpz_int("1000000000000000000000000000000")));
}

TEST_CASE("fractions") {
    CHECK(*parse_rational("3/4") == Rational(3, 4));
    CHECK(*parse_rational("-6/4") == Rational(-3, 2));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("1/"));
}

TEST_CASE("malformed numerals") {
    for (const char* bad : {"", "-", ".", "abc", "1.2.3", "1e", "1e+", "e5", "1x", "--1", "1e99999"}) {
        CAPTURE(bad);
        CHECK_FALSE(parse_rational(bad));
    }
}

TEST_CASE("printing") {
    CHECK(refnet::to_string(Rational(-1, 3)) == "-1/3");
    CHECK(refnet::to_string(Rational(4)) == "4");
}
