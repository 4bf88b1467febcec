#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "popledger/errors.hpp"
#include "popledger/hash.hpp"

namespace popledger {

// Opaque, stable identity of one enrolled human. The registry only ever
// sees the 32-byte digest of an attestation credential, never the
// credential itself.
struct ParticipantId {
    Hash32 bytes{};

    auto operator<=>(const ParticipantId&) const = default;

    std::string str() const { return to_hex(bytes); }
    static std::optional<ParticipantId> parse(std::string_view hex);
};

// Pluggable proof-of-personhood boundary. Whatever mechanism establishes
// one-credential-per-human lives behind this interface; the ledger only
// requires determinism (same credential, same identity).
class AttestationProvider {
public:
    virtual ~AttestationProvider() = default;
    virtual std::optional<ParticipantId> verify(std::span<const std::uint8_t> credential) const = 0;
};

// Stand-in provider: the credential is its own preimage, identity is its
// SHA-256. Rejects empty credentials.
class HashAttestation final : public AttestationProvider {
public:
    std::optional<ParticipantId> verify(std::span<const std::uint8_t> credential) const override;
};

// Enrolled persons per epoch: the denominator of every distribution.
// A departed identity never re-enters; its held outputs stay spendable
// (departure stops the income stream, it does not confiscate the estate).
class ParticipantRegistry {
public:
    ParticipantId enroll(const AttestationProvider& attestation,
                         std::span<const std::uint8_t> credential, std::uint64_t epoch);
    void depart(const ParticipantId& id);

    std::uint64_t active_count() const { return active_.size(); }
    bool is_active(const ParticipantId& id) const { return active_.contains(id); }
    bool is_departed(const ParticipantId& id) const { return departed_.contains(id); }

    // id -> enrollment epoch, ordered by id bytes; iteration order is the
    // canonical distribution order.
    const std::map<ParticipantId, std::uint64_t>& active() const { return active_; }
    const std::map<ParticipantId, std::uint64_t>& departed() const { return departed_; }

    // Snapshot restore path; skips attestation.
    void load_active(const ParticipantId& id, std::uint64_t enrollment_epoch);
    void load_departed(const ParticipantId& id, std::uint64_t enrollment_epoch);

private:
    std::map<ParticipantId, std::uint64_t> active_;
    std::map<ParticipantId, std::uint64_t> departed_;
};

} // namespace popledger
