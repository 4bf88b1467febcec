#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace popledger {

using Hash32 = std::array<std::uint8_t, 32>;

Hash32 sha256(std::span<const std::uint8_t> data);
Hash32 sha256(std::string_view data);

std::string to_hex(const Hash32& hash);
std::optional<Hash32> hash_from_hex(std::string_view hex);

std::optional<std::vector<std::uint8_t>> bytes_from_hex(std::string_view hex);

// Accumulates a canonical byte string for hashing: fixed-width big-endian
// integers, length-free fixed fields, explicit tags. Identical logical
// content always hashes identically.
class HashWriter {
public:
    HashWriter& tag(std::string_view t);
    HashWriter& u8(std::uint8_t v);
    HashWriter& u64(std::uint64_t v);
    HashWriter& u128be(unsigned __int128 v);
    HashWriter& bytes(std::span<const std::uint8_t> data);
    HashWriter& hash(const Hash32& h);
    Hash32 digest() const;

private:
    std::vector<std::uint8_t> buffer_;
};

} // namespace popledger
