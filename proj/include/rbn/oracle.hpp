#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/keys.hpp"
#include "rbn/value.hpp"

namespace rbn {

/// Signed external fact. The signature covers (subject, value, height)
/// under the "rbn:att:v1" domain tag; the signer public key is embedded
/// so attestations verify stand-alone.
struct Attestation {
    Address oracle;
    std::string subject;
    Value value;
    std::uint64_t height = 0;
    PublicKey pubkey{};
    Signature signature{};

    Bytes signing_preimage() const;
    Bytes encode() const;
    static Result<Attestation> decode(std::span<const std::uint8_t> bytes);

    nlohmann::ordered_json to_json() const;
};

/// True iff the signature verifies and the embedded key belongs to
/// `expected_oracle`.
bool verify_attestation(const Attestation& att, const Address& expected_oracle);

/// One oracle identity's publisher, bound to its keypair at construction.
/// publish() with a foreign keypair is Unauthorized.
class OracleAgent {
  public:
    explicit OracleAgent(const KeyPair& keys);

    const Address& address() const { return address_; }
    Result<Attestation> publish(const KeyPair& keys, std::string subject, Value value,
                                std::uint64_t height);

  private:
    KeyPair keys_;
    Address address_;
};

/// Append-only shared bus of published attestations. query_latest returns
/// the highest-height match (publication order breaks ties).
class AttestationStore {
  public:
    void add(Attestation att);
    std::optional<Attestation> query_latest(std::string_view subject) const;
    const std::vector<Attestation>& all() const { return attestations_; }

  private:
    std::vector<Attestation> attestations_;
};

} // namespace rbn
