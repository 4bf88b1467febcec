#pragma once

#include <cstdint>
#include <string>

#include "popledger/poplets.hpp"
#include "popledger/rational.hpp"

namespace popledger {

// The whole monetary pie starts at exactly 2^64 Poplets.
inline constexpr u128 kInitialValueSpaceRaw = static_cast<u128>(1) << 64;

// 365.25 days per year as the exact ratio 1461/4.
inline constexpr std::uint64_t kDaysPerYearNum = 1461;
inline constexpr std::uint64_t kDaysPerYearDen = 4;

// The finite value space: the sum of all money that exists or could exist.
// Each epoch it expands by a factor of L/(L-1), realized in exact integers
// as issuance = floor((size + carry) / (L-1)) with the division remainder
// carried forward, so the integer trajectory stays within a few dozen
// Poplets of the exact geometric path over centuries of epochs.
struct ValueSpace {
    Poplets size;
    std::uint64_t epoch = 0;    // completed expansions
    std::uint64_t lifespan = 50;
    Poplets residual;           // distribution remainder carried to the next epoch's pool
    std::uint64_t expansion_carry = 0;  // sub-issuance remainder of the expansion division
    std::uint64_t property_carry = 0;   // same, for the escrow pool under dual-rate config
};

// lifespan_years < 2 is rejected: the expansion divisor is L-1.
ValueSpace new_value_space(std::uint64_t lifespan_years);

// One pool-expansion step: issuance = floor((pool + carry) / (lifespan - 1)),
// carry updated to the remainder.
Poplets expansion_issuance(Poplets pool, std::uint64_t lifespan, std::uint64_t& carry);

// Grows the space by one epoch and returns the newly created Poplets.
Poplets expand_epoch(ValueSpace& vs);

// Poplets per Popcoin: one Popcoin is one day's share of one person's
// fresh yearly distribution, i.e. issuance / participants / 365.25.
struct ConversionRate {
    Rational poplets_per_popcoin;
    std::uint64_t epoch = 0;
    std::uint64_t participants = 0;
};

ConversionRate conversion_rate(Poplets last_issuance, std::uint64_t participants,
                               std::uint64_t epoch);

// Face-value rendering: amount / rate, half-even, fixed decimal places.
std::string to_popcoin_display(Poplets amount, const ConversionRate& rate,
                               unsigned decimals);

} // namespace popledger
