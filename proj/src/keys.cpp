#include "rbn/keys.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace rbn {

namespace {
void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
    });
}
} // namespace

Result<KeyPair> generate_keypair(std::span<const std::uint8_t> seed) {
    ensure_sodium();
    if (seed.size() != kSeedSize)
        return Result<KeyPair>::err(Errc::SeedLength,
                                    "seed must be exactly 32 bytes, got " +
                                        std::to_string(seed.size()));
    KeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed.data());
    return kp;
}

Signature sign(std::span<const std::uint8_t> message, const SecretKey& secret_key) {
    ensure_sodium();
    Signature sig;
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                         secret_key.data());
    return sig;
}

bool verify(const Signature& signature, std::span<const std::uint8_t> message,
            const PublicKey& public_key) {
    ensure_sodium();
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                       public_key.data()) == 0;
}

Result<PublicKey> public_key_from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kPublicKeySize)
        return Result<PublicKey>::err(Errc::KeyFormat, "public key must be 32 bytes");
    PublicKey pk;
    std::copy(bytes.begin(), bytes.end(), pk.begin());
    return pk;
}

Result<Signature> signature_from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kSignatureSize)
        return Result<Signature>::err(Errc::KeyFormat, "signature must be 64 bytes");
    Signature sig;
    std::copy(bytes.begin(), bytes.end(), sig.begin());
    return sig;
}

} // namespace rbn
