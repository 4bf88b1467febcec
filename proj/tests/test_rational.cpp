#include <doctest.h>

#include "popledger/rational.hpp"

using namespace popledger;

TEST_CASE("parse_number accepts integers, e-notation, decimals and ratios")
{
    CHECK(*parse_number("42") == Rational(42));
    CHECK(*parse_number("36800000e6") == Rational(BigInt("36800000000000")));
    CHECK(*parse_number("0.02") == Rational(1, 50));
    CHECK(*parse_number("0.10") == Rational(1, 10));
    CHECK(*parse_number("1.5e3") == Rational(1500));
    CHECK(*parse_number("3/4") == Rational(3, 4));
    CHECK(*parse_number("-2.5") == Rational(-5, 2));
    CHECK(*parse_number("1e-2") == Rational(1, 100));

    CHECK_FALSE(parse_number("").has_value());
    CHECK_FALSE(parse_number("abc").has_value());
    CHECK_FALSE(parse_number("1/0").has_value());
    CHECK_FALSE(parse_number("1..2").has_value());
    CHECK_FALSE(parse_number("1e").has_value());
}

TEST_CASE("half-even rounding at ties")
{
    CHECK(round_half_even(Rational(5, 2)) == 2);  // 2.5 -> 2
    CHECK(round_half_even(Rational(7, 2)) == 4);  // 3.5 -> 4
    CHECK(round_half_even(Rational(-5, 2)) == -2);
    CHECK(round_half_even(Rational(49, 20)) == 2); // 2.45
    CHECK(round_half_even(Rational(51, 20)) == 3); // 2.55
}

TEST_CASE("significant rounding and rendering")
{
    CHECK(round_significant(*parse_number("223.8532"), 3) == Rational(224));
    CHECK(round_significant(*parse_number("96.46133"), 3) == Rational(965, 10));
    CHECK(round_significant(*parse_number("1538.64"), 3) == Rational(1540));
    CHECK(round_significant(*parse_number("0.034726"), 3) == Rational(347, 10000));

    CHECK(decimal_str(*parse_number("0.34726"), 3) == "0.347");
    CHECK(decimal_str(Rational(49, 25), 12) == "1.96000000000");
    CHECK(decimal_str(Rational(1505856659078330744LL) / Rational(1461), 12)
          == "1030702709840000");
    CHECK(decimal_str(Rational(0), 5) == "0");

    CHECK(fixed_str(Rational(3, 2), 1) == "1.5");
    CHECK(fixed_str(Rational(3, 2), 0) == "2");  // ties to even
    CHECK(fixed_str(Rational(1, 8), 2) == "0.12");
    CHECK(fixed_str(Rational(0), 2) == "0.00");

    CHECK(grouped_fixed_str(Rational(3846604, 1000), 2) == "3,846.60");
    CHECK(grouped_fixed_str(Rational(1234567891), 2) == "1,234,567,891.00");
    CHECK(grouped_fixed_str(Rational(999), 2) == "999.00");
}

TEST_CASE("ratio_str is canonical and reduced")
{
    CHECK(ratio_str(Rational(4, 8)) == "1/2");
    CHECK(ratio_str(Rational(7630)) == "7630/1");
    CHECK(ratio_str(Rational(0)) == "0/1");
}

TEST_CASE("u128 <-> bigint conversions")
{
    u128 big = (static_cast<u128>(0x0123456789abcdefULL) << 64) | 0xfedcba9876543210ULL;
    CHECK(to_poplets(to_bigint(big)).raw() == big);
    CHECK_THROWS_AS(to_poplets(BigInt(-1)), Error);
    CHECK_THROWS_AS(to_poplets(BigInt(1) << 128), Error);
}
