#include "popledger/policy.hpp"

namespace popledger {

PolicyKind PolicyKind::make(Policy kind, std::uint64_t lifespan)
{
    check(lifespan >= 2, Errc::InvalidConfig, "policy lifespan must be at least 2");
    return PolicyKind{kind, lifespan};
}

SplitResult split_equally(Poplets issuance, Poplets residual_in, std::uint64_t participants)
{
    check(participants > 0, Errc::NoParticipants);
    Poplets pool = issuance + residual_in;
    auto [per, residual] = pool.divmod(participants);
    return SplitResult{per, residual};
}

namespace {

EpochOutcome build_outcome(std::uint64_t epoch, Poplets issuance, ValueSpace& vs,
                           const ParticipantRegistry& registry,
                           std::optional<std::uint64_t> expiry)
{
    auto split = split_equally(issuance, vs.residual, registry.active_count());
    vs.residual = split.residual;

    EpochOutcome outcome;
    outcome.event = DistributionEvent{epoch, issuance, split.per_participant,
                                      registry.active_count(), split.residual};
    if (!split.per_participant.is_zero()) {
        outcome.coinbase.reserve(registry.active_count());
        for (const auto& [id, enrolled] : registry.active()) {
            outcome.coinbase.push_back(CoinbaseOutput{id, split.per_participant, expiry});
        }
    }
    return outcome;
}

} // namespace

EpochOutcome democratic_epoch(ValueSpace& vs, const ParticipantRegistry& registry,
                              std::optional<std::uint64_t> property_lifespan,
                              Poplets escrowed_total)
{
    check(registry.active_count() > 0, Errc::NoParticipants);

    Poplets issuance;
    if (property_lifespan.has_value()) {
        // Dual-rate: the escrowed slice of the space expands at the property
        // rate, the rest at the circulating rate; one merged distribution.
        check(escrowed_total <= vs.size, Errc::Overflow, "escrow exceeds value space");
        Poplets circulating = vs.size - escrowed_total;
        Poplets from_circulating =
            expansion_issuance(circulating, vs.lifespan, vs.expansion_carry);
        Poplets from_property =
            expansion_issuance(escrowed_total, *property_lifespan, vs.property_carry);
        issuance = from_circulating + from_property;
        vs.size += issuance;
        ++vs.epoch;
    } else {
        issuance = expand_epoch(vs);
    }
    return build_outcome(vs.epoch, issuance, vs, registry, std::nullopt);
}

EpochOutcome expiring_epoch(ValueSpace& vs, Poplets batch_size, std::uint64_t lifespan,
                            const ParticipantRegistry& registry)
{
    check(registry.active_count() > 0, Errc::NoParticipants);
    check(lifespan >= 2, Errc::InvalidConfig, "policy lifespan must be at least 2");
    ++vs.epoch;
    return build_outcome(vs.epoch, batch_size, vs, registry, vs.epoch + lifespan);
}

std::optional<std::uint64_t> remaining_lifetime(std::optional<std::uint64_t> expiry,
                                                std::uint64_t epoch)
{
    if (!expiry.has_value()) {
        return std::nullopt;
    }
    return *expiry > epoch ? *expiry - epoch : 0;
}

Rational adoption_reward_factor(std::uint64_t world_population, std::uint64_t users)
{
    check(users > 0, Errc::NoParticipants);
    return Rational(BigInt(world_population), BigInt(users));
}

} // namespace popledger
