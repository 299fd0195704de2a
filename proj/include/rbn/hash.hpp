#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "rbn/bytes.hpp"

namespace rbn {

using Hash32 = std::array<std::uint8_t, 32>;

Hash32 sha256(std::span<const std::uint8_t> data);

std::string hash_hex(const Hash32& h);
std::optional<Hash32> hash_from_hex(std::string_view hex);

inline constexpr Hash32 kZeroHash{};

/// True when the hash has at least `bits` leading zero bits. bits == 0
/// accepts everything.
bool meets_difficulty(const Hash32& h, std::uint32_t bits);

} // namespace rbn
