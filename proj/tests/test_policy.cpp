#include <doctest.h>

#include <map>
#include <vector>

#include "popledger/policy.hpp"

using namespace popledger;

namespace {

std::vector<std::uint8_t> cred(std::uint64_t n)
{
    std::vector<std::uint8_t> bytes(8);
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<std::uint8_t>(n >> (56 - 8 * i));
    }
    return bytes;
}

ParticipantRegistry registry_of(std::uint64_t count)
{
    HashAttestation attestation;
    ParticipantRegistry registry;
    for (std::uint64_t i = 0; i < count; ++i) {
        registry.enroll(attestation, cred(i + 1), 0);
    }
    return registry;
}

} // namespace

TEST_CASE("split_equally conserves the pool")
{
    auto split = split_equally(Poplets{376464164769582686ULL}, Poplets{0}, 49);
    CHECK(split.per_participant.raw() == 7682942138154748ULL); // long division
    CHECK(split.residual.raw() == 34);
    CHECK(split.per_participant * 49 + split.residual == Poplets{376464164769582686ULL});

    CHECK_THROWS_AS(split_equally(Poplets{10}, Poplets{0}, 0), Error);
}

TEST_CASE("democratic epoch: one participant takes the whole issuance")
{
    ValueSpace vs = new_value_space(50);
    auto registry = registry_of(1);
    auto outcome = democratic_epoch(vs, registry);
    CHECK(outcome.event.issuance.str() == "376464164769582686");
    CHECK(outcome.event.per_participant.str() == "376464164769582686");
    CHECK(outcome.event.participants == 1);
    CHECK(outcome.event.residual_carried.is_zero());
    REQUIRE(outcome.coinbase.size() == 1);
    CHECK(outcome.coinbase[0].amount == outcome.event.per_participant);
    CHECK_FALSE(outcome.coinbase[0].expiry.has_value());
}

TEST_CASE("democratic epoch: 49 equal slices with residual 34")
{
    ValueSpace vs = new_value_space(50);
    auto registry = registry_of(49);
    auto outcome = democratic_epoch(vs, registry);
    CHECK(outcome.event.per_participant.raw() == 7682942138154748ULL);
    CHECK(outcome.event.residual_carried.raw() == 34);
    REQUIRE(outcome.coinbase.size() == 49);
    for (const auto& out : outcome.coinbase) { // all shares identical
        CHECK(out.amount == outcome.event.per_participant);
    }
    CHECK(vs.residual.raw() == 34);
}

TEST_CASE("epoch with nobody enrolled is refused")
{
    ValueSpace vs = new_value_space(50);
    ParticipantRegistry empty;
    CHECK_THROWS_AS(democratic_epoch(vs, empty), Error);
    CHECK_THROWS_AS(expiring_epoch(vs, Poplets{100}, 3, empty), Error);
}

TEST_CASE("doubling the population pays earlier joiners 2(L-1)/L more")
{
    // year Y: N participants; year Y+1: 2N. Early shares divided by late
    // shares approach 1.96 for L=50.
    constexpr std::uint64_t n = 1000000;
    ValueSpace vs = new_value_space(50);
    auto registry = registry_of(n);
    auto first = democratic_epoch(vs, registry);

    HashAttestation attestation;
    for (std::uint64_t i = 0; i < n; ++i) {
        registry.enroll(attestation, cred(2000000 + i), 1);
    }
    auto second = democratic_epoch(vs, registry);

    Rational ratio(to_bigint(first.event.per_participant),
                   to_bigint(second.event.per_participant));
    Rational expected(49, 25); // 2 * 49/50
    Rational deviation = ratio > expected ? ratio - expected : expected - ratio;
    CHECK(deviation < Rational(1, BigInt(1000000000)));
}

TEST_CASE("expiring policy keeps a rolling window of L live batches")
{
    // L=3, constant batch of 300: after five epochs only the last three
    // batches remain extant.
    constexpr std::uint64_t lifespan = 3;
    ValueSpace vs = new_value_space(lifespan);
    auto registry = registry_of(4);

    std::map<std::uint64_t, Poplets> minted_by_epoch;
    Poplets extant;
    for (int epoch = 1; epoch <= 5; ++epoch) {
        auto outcome = expiring_epoch(vs, Poplets{300}, lifespan, registry);
        Poplets minted;
        for (const auto& out : outcome.coinbase) {
            CHECK(out.expiry == vs.epoch + lifespan);
            minted += out.amount;
        }
        minted_by_epoch[vs.epoch] = minted;

        extant = Poplets{};
        for (const auto& [mint_epoch, amount] : minted_by_epoch) {
            if (mint_epoch + lifespan > vs.epoch) {
                extant += amount;
            }
        }
    }
    CHECK(extant.raw() == 900);
    CHECK(vs.size.raw() == kInitialValueSpaceRaw); // size never moves
}

TEST_CASE("remaining lifetime of coins")
{
    CHECK_FALSE(remaining_lifetime(std::nullopt, 10).has_value()); // democratic coin
    CHECK(remaining_lifetime(52, 10).value() == 42); // minted epoch 2, L=50
    CHECK(remaining_lifetime(52, 52).value() == 0);
    CHECK(remaining_lifetime(52, 60).value() == 0);
    CHECK(remaining_lifetime(3, 0).value() == 3); // epoch-0 coin dies at epoch L
}

TEST_CASE("adoption reward factor")
{
    CHECK(adoption_reward_factor(7630000000ULL, 7630000000ULL) == Rational(1));
    CHECK(adoption_reward_factor(7630000000ULL, 1000000) == Rational(7630));
    CHECK_THROWS_AS(adoption_reward_factor(1000, 0), Error);
}
