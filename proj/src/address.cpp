#include "rbn/address.hpp"

#include "rbn/bytes.hpp"
#include "rbn/hash.hpp"

namespace rbn {

Result<Address> Address::parse(std::string_view display) {
    if (display.size() != 2 + 2 * kSize || display.substr(0, 2) != "0x")
        return Result<Address>::err(Errc::KeyFormat,
                                    "address must be 0x + 40 lowercase hex chars");
    auto bytes = from_hex(display.substr(2));
    if (!bytes)
        return Result<Address>::err(Errc::KeyFormat, "address contains non-hex characters");
    std::array<std::uint8_t, kSize> arr;
    std::copy(bytes->begin(), bytes->end(), arr.begin());
    return Address(arr);
}

std::string Address::display() const { return "0x" + to_hex(bytes_); }

Address derive_address(const PublicKey& public_key) {
    Hash32 h = sha256(public_key);
    std::array<std::uint8_t, Address::kSize> arr;
    std::copy(h.begin() + (h.size() - Address::kSize), h.end(), arr.begin());
    return Address(arr);
}

Result<Address> derive_address_from_bytes(std::span<const std::uint8_t> key_bytes) {
    auto pk = public_key_from_bytes(key_bytes);
    if (pk.is_err()) return pk.error();
    return derive_address(pk.value());
}

Address derive_contract_address(const Address& deployer, std::uint64_t nonce) {
    ByteWriter w;
    w.tag("rbn:contract:v1");
    w.raw(deployer.bytes());
    w.u64(nonce);
    Hash32 h = sha256(w.bytes());
    std::array<std::uint8_t, Address::kSize> arr;
    std::copy(h.begin() + (h.size() - Address::kSize), h.end(), arr.begin());
    return Address(arr);
}

} // namespace rbn
