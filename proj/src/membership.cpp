#include "popledger/membership.hpp"

namespace popledger {

std::optional<ParticipantId> ParticipantId::parse(std::string_view hex)
{
    auto bytes = hash_from_hex(hex);
    if (!bytes) {
        return std::nullopt;
    }
    return ParticipantId{*bytes};
}

std::optional<ParticipantId> HashAttestation::verify(
    std::span<const std::uint8_t> credential) const
{
    if (credential.empty()) {
        return std::nullopt;
    }
    return ParticipantId{sha256(credential)};
}

ParticipantId ParticipantRegistry::enroll(const AttestationProvider& attestation,
                                          std::span<const std::uint8_t> credential,
                                          std::uint64_t epoch)
{
    auto id = attestation.verify(credential);
    check(id.has_value(), Errc::InvalidCredential);
    check(!departed_.contains(*id), Errc::ReenrollmentAfterDeparture, id->str());
    check(!active_.contains(*id), Errc::DuplicateEnrollment, id->str());
    active_.emplace(*id, epoch);
    return *id;
}

void ParticipantRegistry::depart(const ParticipantId& id)
{
    auto it = active_.find(id);
    check(it != active_.end(), Errc::UnknownParticipant, id.str());
    departed_.emplace(id, it->second);
    active_.erase(it);
}

void ParticipantRegistry::load_active(const ParticipantId& id, std::uint64_t enrollment_epoch)
{
    check(!departed_.contains(id) && !active_.contains(id), Errc::MalformedSnapshot,
          "participant listed twice");
    active_.emplace(id, enrollment_epoch);
}

void ParticipantRegistry::load_departed(const ParticipantId& id, std::uint64_t enrollment_epoch)
{
    check(!departed_.contains(id) && !active_.contains(id), Errc::MalformedSnapshot,
          "participant listed twice");
    departed_.emplace(id, enrollment_epoch);
}

} // namespace popledger
