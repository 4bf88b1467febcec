#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "popledger/hash.hpp"
#include "popledger/membership.hpp"
#include "popledger/poplets.hpp"

namespace popledger {

// A registered property: appraised value, the escrow backing it, and the
// tenure clock. Escrow is held as locked UTXOs tagged with the property id;
// `escrow` mirrors their sum at all times.
struct PropertyRecord {
    Hash32 id{};
    ParticipantId owner;
    Poplets appraised_value;
    Poplets escrow;
    std::uint64_t tenure = 0;
    std::uint64_t registered_epoch = 0;
};

struct StandingBid {
    ParticipantId bidder;
    Poplets amount;
    std::uint64_t epoch_placed = 0;
};

// Records plus the open bid book. One standing bid per bidder per property;
// re-bidding replaces. The second-highest standing bid is a floor under the
// appraised value: whenever it rises above the appraisal, the appraisal is
// forced up to it.
struct PropertyBook {
    std::map<Hash32, PropertyRecord> records;
    std::map<Hash32, std::map<ParticipantId, StandingBid>> bids;

    // Second-highest bid amount, or nullopt with fewer than two bids.
    std::optional<Poplets> second_price(const Hash32& property_id) const;
    // Highest bid amount among any standing bids.
    std::optional<Poplets> best_price(const Hash32& property_id) const;
};

} // namespace popledger
