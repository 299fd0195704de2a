#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "rbn/bytes.hpp"
#include "rbn/result.hpp"

namespace rbn {

inline constexpr std::size_t kSeedSize = 32;
inline constexpr std::size_t kPublicKeySize = 32;
inline constexpr std::size_t kSecretKeySize = 64;
inline constexpr std::size_t kSignatureSize = 64;

using Seed = std::array<std::uint8_t, kSeedSize>;
using PublicKey = std::array<std::uint8_t, kPublicKeySize>;
using SecretKey = std::array<std::uint8_t, kSecretKeySize>;
using Signature = std::array<std::uint8_t, kSignatureSize>;

struct KeyPair {
    SecretKey secret_key;
    PublicKey public_key;
};

/// Deterministic Ed25519 keypair from a 32-byte seed. Same seed, same
/// keys, on every platform.
Result<KeyPair> generate_keypair(std::span<const std::uint8_t> seed);

Signature sign(std::span<const std::uint8_t> message, const SecretKey& secret_key);
bool verify(const Signature& signature, std::span<const std::uint8_t> message,
            const PublicKey& public_key);

Result<PublicKey> public_key_from_bytes(std::span<const std::uint8_t> bytes);
Result<Signature> signature_from_bytes(std::span<const std::uint8_t> bytes);

} // namespace rbn
