#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "popledger/membership.hpp"
#include "popledger/poplets.hpp"
#include "popledger/rational.hpp"
#include "popledger/value_space.hpp"

namespace popledger {

enum class Policy : std::uint8_t {
    // Reference design: the value space expands by L/(L-1) each epoch and
    // the new money is distributed equally; old balances keep their Poplet
    // counts and dilute.
    democratic,
    // Straw-man comparison: a constant batch is minted each epoch and every
    // coin vanishes L epochs after its mint.
    expiring,
};

struct PolicyKind {
    Policy kind = Policy::democratic;
    std::uint64_t lifespan = 50; // L >= 2

    static PolicyKind make(Policy kind, std::uint64_t lifespan);
};

// One coinbase distribution. Invariant:
//   per_participant * participants + residual_carried = issuance + previous residual.
struct DistributionEvent {
    std::uint64_t epoch = 0;
    Poplets issuance;
    Poplets per_participant;
    std::uint64_t participants = 0;
    Poplets residual_carried;
};

struct CoinbaseOutput {
    ParticipantId owner;
    Poplets amount;
    std::optional<std::uint64_t> expiry; // mint epoch + L for expiring coins
};

struct EpochOutcome {
    DistributionEvent event;
    std::vector<CoinbaseOutput> coinbase; // ordered by owner id
};

// Equal split of (issuance + residual_in) over `participants`; the floor
// remainder is returned, never dropped.
struct SplitResult {
    Poplets per_participant;
    Poplets residual;
};
SplitResult split_equally(Poplets issuance, Poplets residual_in, std::uint64_t participants);

// Expands the space by one epoch and splits the new money equally over the
// active participants. With `property_lifespan` set, the escrowed portion
// of the space expands at its own (usually slower) rate and both issuances
// merge into one distribution pool.
EpochOutcome democratic_epoch(ValueSpace& vs, const ParticipantRegistry& registry,
                              std::optional<std::uint64_t> property_lifespan = {},
                              Poplets escrowed_total = {});

// Mints one fixed batch tagged to expire `lifespan` epochs after its mint.
// The caller removes coins whose expiry has arrived; the value space size
// itself never changes under this policy.
EpochOutcome expiring_epoch(ValueSpace& vs, Poplets batch_size, std::uint64_t lifespan,
                            const ParticipantRegistry& registry);

// Epochs of usability left: a coin minted at epoch e with lifespan L is
// spendable through e+L-1 and invalid from e+L. nullopt = never expires.
std::optional<std::uint64_t> remaining_lifetime(std::optional<std::uint64_t> expiry,
                                                std::uint64_t epoch);

// World population over current users: the factor by which a holdout's
// first distribution could still shrink relative to joining now.
Rational adoption_reward_factor(std::uint64_t world_population, std::uint64_t users);

} // namespace popledger
