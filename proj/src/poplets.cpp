#include "popledger/poplets.hpp"

#include <algorithm>

namespace popledger {

std::string u128_to_string(u128 value)
{
    if (value == 0) {
        return "0";
    }
    std::string digits;
    while (value != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<unsigned>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::optional<u128> u128_from_string(std::string_view text)
{
    if (text.empty() || text.size() > 39) {
        return std::nullopt;
    }
    u128 value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        u128 shifted = 0;
        if (__builtin_mul_overflow(value, static_cast<u128>(10), &shifted)) {
            return std::nullopt;
        }
        u128 next = shifted + static_cast<u128>(c - '0');
        if (next < shifted) {
            return std::nullopt;
        }
        value = next;
    }
    return value;
}

std::string Poplets::str() const
{
    return u128_to_string(raw_);
}

std::optional<Poplets> Poplets::parse(std::string_view text)
{
    auto raw = u128_from_string(text);
    if (!raw) {
        return std::nullopt;
    }
    return Poplets{*raw};
}

} // namespace popledger
