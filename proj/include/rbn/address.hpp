#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>

#include "rbn/keys.hpp"
#include "rbn/result.hpp"

namespace rbn {

/// 20-byte account identifier, displayed as 0x-prefixed lowercase hex.
class Address {
  public:
    static constexpr std::size_t kSize = 20;

    Address() : bytes_{} {}
    explicit Address(const std::array<std::uint8_t, kSize>& bytes) : bytes_(bytes) {}

    static Address zero() { return Address{}; }

    /// Strict parse of the display form: "0x" + 40 lowercase hex chars.
    static Result<Address> parse(std::string_view display);

    const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }
    std::string display() const;
    bool is_zero() const { return bytes_ == std::array<std::uint8_t, kSize>{}; }

    auto operator<=>(const Address&) const = default;

  private:
    std::array<std::uint8_t, kSize> bytes_;
};

/// Last 20 bytes of sha256(public_key).
Address derive_address(const PublicKey& public_key);

/// Same truncation applied to arbitrary key material; rejects anything
/// that is not 32 bytes.
Result<Address> derive_address_from_bytes(std::span<const std::uint8_t> key_bytes);

/// Deterministic contract address: last 20 bytes of
/// sha256("rbn:contract:v1" | deployer | nonce).
Address derive_contract_address(const Address& deployer, std::uint64_t nonce);

} // namespace rbn
