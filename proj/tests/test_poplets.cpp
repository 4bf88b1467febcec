#include <doctest.h>

#include <random>

#include "popledger/poplets.hpp"

using namespace popledger;

TEST_CASE("poplet arithmetic is exact and checked")
{
    Poplets a{100};
    Poplets b{42};
    CHECK((a + b).raw() == 142);
    CHECK((a - b).raw() == 58);
    CHECK((a * 3).raw() == 300);

    CHECK_THROWS_AS(b - a, Error);

    Poplets near_max{~u128{0}};
    CHECK_THROWS_AS(near_max + Poplets{1}, Error);
    CHECK_THROWS_AS(near_max * 2, Error);
    try {
        near_max + Poplets{1};
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Overflow);
    }
}

TEST_CASE("divmod splits with remainder")
{
    auto [q, r] = Poplets{1000}.divmod(7);
    CHECK(q.raw() == 142);
    CHECK(r.raw() == 6);
    CHECK_THROWS_AS(Poplets{1}.divmod(0), Error);
}

TEST_CASE("decimal round-trip across the whole range")
{
    CHECK(Poplets{0}.str() == "0");
    CHECK(Poplets{(u128{1} << 64)}.str() == "18446744073709551616");
    CHECK(Poplets::parse("18446744073709551616")->raw() == (u128{1} << 64));
    CHECK(Poplets{~u128{0}}.str() == "340282366920938463463374607431768211455");
    CHECK(Poplets::parse("340282366920938463463374607431768211455")->raw() == ~u128{0});

    CHECK_FALSE(Poplets::parse("").has_value());
    CHECK_FALSE(Poplets::parse("12x").has_value());
    CHECK_FALSE(Poplets::parse("-1").has_value());
    CHECK_FALSE(Poplets::parse("340282366920938463463374607431768211456").has_value());

    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        u128 value = (static_cast<u128>(rng()) << 64) | rng();
        value >>= (rng() % 128);
        Poplets p{value};
        auto back = Poplets::parse(p.str());
        REQUIRE(back.has_value());
        CHECK(back->raw() == value);
    }
}
