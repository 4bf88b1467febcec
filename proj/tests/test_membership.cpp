#include <doctest.h>

#include <array>
#include <vector>

#include "popledger/membership.hpp"

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

} // namespace

TEST_CASE("enrollment is deterministic and duplicate-rejecting")
{
    HashAttestation attestation;
    ParticipantRegistry registry;

    auto id = registry.enroll(attestation, cred(1), 0);
    CHECK(registry.active_count() == 1);
    CHECK(registry.is_active(id));

    // same credential, same identity, second attempt rejected
    CHECK_THROWS_AS(registry.enroll(attestation, cred(1), 0), Error);
    CHECK(registry.active_count() == 1);

    try {
        registry.enroll(attestation, cred(1), 1);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateEnrollment);
    }

    CHECK_THROWS_AS(registry.enroll(attestation, {}, 0), Error); // empty credential
}

TEST_CASE("departure stops membership and re-enrollment")
{
    HashAttestation attestation;
    ParticipantRegistry registry;
    auto a = registry.enroll(attestation, cred(1), 0);
    auto b = registry.enroll(attestation, cred(2), 0);
    CHECK(registry.active_count() == 2);

    registry.depart(a);
    CHECK(registry.active_count() == 1);
    CHECK(registry.is_departed(a));
    CHECK(registry.is_active(b));

    CHECK_THROWS_AS(registry.depart(a), Error); // already gone
    try {
        registry.enroll(attestation, cred(1), 3);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ReenrollmentAfterDeparture);
    }

    ParticipantId unknown;
    unknown.bytes.fill(0xee);
    CHECK_THROWS_AS(registry.depart(unknown), Error);
}

TEST_CASE("enroll five, depart two")
{
    HashAttestation attestation;
    ParticipantRegistry registry;
    std::vector<ParticipantId> ids;
    for (std::uint64_t i = 0; i < 5; ++i) {
        ids.push_back(registry.enroll(attestation, cred(i + 10), 0));
    }
    registry.depart(ids[0]);
    registry.depart(ids[3]);
    CHECK(registry.active_count() == 3);
}

TEST_CASE("bulk enrollment of one million distinct credentials")
{
    HashAttestation attestation;
    ParticipantRegistry registry;
    for (std::uint64_t i = 0; i < 1000000; ++i) {
        registry.enroll(attestation, cred(i), 0);
    }
    CHECK(registry.active_count() == 1000000);
}
