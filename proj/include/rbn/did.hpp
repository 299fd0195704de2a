#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/keys.hpp"

namespace rbn {

/// Self-sovereign identifier record. The DID string is
/// "did:rbn:<40-char address hex>", where the address is derived from
/// public_key; controller optionally links to another identity (for a
/// robot, typically its human operator).
struct DidDocument {
    std::string did;
    std::optional<Address> controller;
    PublicKey public_key{};
    std::map<std::string, std::string> attributes;
    std::vector<std::string> service_endpoints;
    bool active = true;
    std::uint64_t version = 1;

    Address address() const;

    /// Canonical JSON with the fixed field order
    /// did, controller, public_key, attributes, service_endpoints,
    /// active, version — documents hash identically everywhere.
    nlohmann::ordered_json to_json() const;
};

std::string did_for_address(const Address& addr);
Result<Address> address_from_did(std::string_view did);

/// Mutation request for update_did. Only the provided pieces change;
/// attribute entries merge over existing keys.
struct DidChanges {
    std::map<std::string, std::string> set_attributes;
    std::optional<std::vector<std::string>> service_endpoints;
    std::optional<std::optional<Address>> controller;
};

/// Authorization for update/deactivate: the signer's public key plus a
/// signature over the domain-tagged canonical request. Accepted when the
/// signer is the document key or the controller.
struct DidAuth {
    PublicKey signer_pubkey{};
    Signature signature{};
};

Bytes did_update_preimage(std::string_view did, std::uint64_t next_version,
                          const DidChanges& changes);
Bytes did_deactivate_preimage(std::string_view did, std::uint64_t next_version);

DidAuth sign_did_update(const KeyPair& signer, std::string_view did,
                        std::uint64_t next_version, const DidChanges& changes);
DidAuth sign_did_deactivate(const KeyPair& signer, std::string_view did,
                            std::uint64_t next_version);

/// Single-writer registry: writes serialized, concurrent reads allowed.
class DidRegistry {
  public:
    Result<DidDocument> register_did(const KeyPair& keypair,
                                     std::map<std::string, std::string> attributes,
                                     std::optional<Address> controller);
    Result<DidDocument> resolve(std::string_view did) const;
    Result<DidDocument> update(std::string_view did, const DidChanges& changes,
                               const DidAuth& auth);
    Result<DidDocument> deactivate(std::string_view did, const DidAuth& auth);

    std::size_t size() const;

  private:
    Result<DidDocument> authorize(std::string_view did, const DidAuth& auth,
                                  const Bytes& preimage) const;

    mutable std::shared_mutex mutex_;
    std::map<std::string, DidDocument> docs_;
};

} // namespace rbn
