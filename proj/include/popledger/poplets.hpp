#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "popledger/errors.hpp"

namespace popledger {

using u128 = unsigned __int128;

// The indivisible atomic unit of ledger value. Balances, transfers and
// issuance are exact integer Poplet counts; there is no fractional unit
// anywhere in ledger state. Arithmetic is checked: an operation that would
// wrap raises Errc::Overflow instead of silently truncating.
//
// 128 bits of range: the value space starts at 2^64 and expands by
// L/(L-1) per epoch, so it stays far below 2^128 for any horizon this
// engine will ever simulate (~2200 epochs at L=50).
class Poplets {
public:
    constexpr Poplets() = default;
    constexpr explicit Poplets(u128 raw) : raw_(raw) {}

    constexpr u128 raw() const { return raw_; }
    constexpr bool is_zero() const { return raw_ == 0; }

    Poplets operator+(Poplets other) const
    {
        u128 sum = raw_ + other.raw_;
        check(sum >= raw_, Errc::Overflow, "poplet addition");
        return Poplets{sum};
    }

    Poplets operator-(Poplets other) const
    {
        check(raw_ >= other.raw_, Errc::Overflow, "poplet subtraction below zero");
        return Poplets{raw_ - other.raw_};
    }

    Poplets operator*(std::uint64_t factor) const
    {
        u128 product = 0;
        check(!__builtin_mul_overflow(raw_, static_cast<u128>(factor), &product),
              Errc::Overflow, "poplet multiplication");
        return Poplets{product};
    }

    // Quotient and remainder of an equal split into `divisor` parts.
    std::pair<Poplets, Poplets> divmod(std::uint64_t divisor) const
    {
        check(divisor != 0, Errc::InvalidConfig, "division by zero");
        return {Poplets{raw_ / divisor}, Poplets{raw_ % divisor}};
    }

    Poplets& operator+=(Poplets other) { return *this = *this + other; }
    Poplets& operator-=(Poplets other) { return *this = *this - other; }

    constexpr auto operator<=>(const Poplets&) const = default;

    std::string str() const;
    static std::optional<Poplets> parse(std::string_view text);

private:
    u128 raw_ = 0;
};

std::string u128_to_string(u128 value);
std::optional<u128> u128_from_string(std::string_view text);

} // namespace popledger
