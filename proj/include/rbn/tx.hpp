#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/keys.hpp"
#include "rbn/value.hpp"

namespace rbn {

/// Contract-call payload: method name plus positional arguments.
/// encode() is the canonical length-prefixed byte form covered by the
/// transaction signature.
struct CallPayload {
    std::string method;
    std::vector<Value> args;

    void encode(ByteWriter& w) const;
    static Result<CallPayload> decode(ByteReader& r);

    nlohmann::ordered_json to_json() const;
    static Result<CallPayload> from_json(const nlohmann::ordered_json& j);

    bool operator==(const CallPayload&) const = default;
};

/// The unit of ledger state change. The signature covers the canonical
/// encoding of (from, to, nonce, amount, payload, pubkey), domain-tagged
/// "rbn:tx:v1". The sender public key is embedded so chain dumps are
/// verifiable without any side channel; derive_address(pubkey) must equal
/// `from`.
struct SignedTransaction {
    Address from;
    Address to;
    std::uint64_t nonce = 0;
    std::uint64_t amount = 0;
    std::optional<CallPayload> payload;
    PublicKey pubkey{};
    Signature signature{};

    Bytes signing_preimage() const;
    /// Preimage plus signature; what block hashes commit to.
    Bytes encode() const;

    /// Signature check against the embedded key, plus the key/address
    /// binding.
    bool verify_signature() const;

    bool is_deploy() const { return payload && to.is_zero() && payload->method == "deploy"; }
    bool is_call() const { return payload.has_value() && !is_deploy(); }

    nlohmann::ordered_json to_json() const;
    static Result<SignedTransaction> from_json(const nlohmann::ordered_json& j);
};

SignedTransaction make_transfer(const KeyPair& sender, const Address& to,
                                std::uint64_t nonce, std::uint64_t amount);

SignedTransaction make_call(const KeyPair& sender, const Address& contract,
                            std::uint64_t nonce, std::uint64_t amount,
                            std::string method, std::vector<Value> args);

/// Deploy transaction: to = zero address, method "deploy",
/// args = [kind, constructor args...].
SignedTransaction make_deploy(const KeyPair& sender, std::uint64_t nonce,
                              std::uint64_t amount, std::string kind,
                              std::vector<Value> ctor_args);

} // namespace rbn
