#include "rbn/hash.hpp"

#include <sodium.h>

namespace rbn {

Hash32 sha256(std::span<const std::uint8_t> data) {
    Hash32 out;
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

std::string hash_hex(const Hash32& h) { return to_hex(h); }

std::optional<Hash32> hash_from_hex(std::string_view hex) {
    auto bytes = from_hex(hex);
    if (!bytes || bytes->size() != 32) return std::nullopt;
    Hash32 out;
    std::copy(bytes->begin(), bytes->end(), out.begin());
    return out;
}

bool meets_difficulty(const Hash32& h, std::uint32_t bits) {
    std::uint32_t full = bits / 8;
    std::uint32_t rem = bits % 8;
    for (std::uint32_t i = 0; i < full; ++i)
        if (h[i] != 0) return false;
    if (rem != 0 && (h[full] >> (8 - rem)) != 0) return false;
    return true;
}

} // namespace rbn
