#include "popledger/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace popledger {

Hash32 sha256(std::span<const std::uint8_t> data)
{
    Hash32 out{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr
        || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx, data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 failure");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

Hash32 sha256(std::string_view data)
{
    return sha256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::string to_hex(const Hash32& hash)
{
    std::string out;
    out.reserve(64);
    for (std::uint8_t byte : hash) {
        out.push_back(kHexDigits[byte >> 4]);
        out.push_back(kHexDigits[byte & 0x0f]);
    }
    return out;
}

std::optional<Hash32> hash_from_hex(std::string_view hex)
{
    if (hex.size() != 64) {
        return std::nullopt;
    }
    Hash32 out{};
    for (std::size_t i = 0; i < 32; ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> bytes_from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0) {
        return std::nullopt;
    }
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_value(hex[i]);
        int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

HashWriter& HashWriter::tag(std::string_view t)
{
    u64(t.size());
    buffer_.insert(buffer_.end(), t.begin(), t.end());
    return *this;
}

HashWriter& HashWriter::u8(std::uint8_t v)
{
    buffer_.push_back(v);
    return *this;
}

HashWriter& HashWriter::u64(std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8) {
        buffer_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    return *this;
}

HashWriter& HashWriter::u128be(unsigned __int128 v)
{
    u64(static_cast<std::uint64_t>(v >> 64));
    u64(static_cast<std::uint64_t>(v));
    return *this;
}

HashWriter& HashWriter::bytes(std::span<const std::uint8_t> data)
{
    u64(data.size());
    buffer_.insert(buffer_.end(), data.begin(), data.end());
    return *this;
}

HashWriter& HashWriter::hash(const Hash32& h)
{
    buffer_.insert(buffer_.end(), h.begin(), h.end());
    return *this;
}

Hash32 HashWriter::digest() const
{
    return sha256(std::span<const std::uint8_t>(buffer_.data(), buffer_.size()));
}

} // namespace popledger
