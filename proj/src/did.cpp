#include "rbn/did.hpp"

#include <mutex>

#include <nlohmann/json.hpp>

#include "rbn/bytes.hpp"

namespace rbn {

namespace {
constexpr std::string_view kDidPrefix = "did:rbn:";

void encode_changes(ByteWriter& w, const DidChanges& changes) {
    w.u32(static_cast<std::uint32_t>(changes.set_attributes.size()));
    for (const auto& [k, v] : changes.set_attributes) {
        w.str(k);
        w.str(v);
    }
    if (changes.service_endpoints) {
        w.u8(1);
        w.u32(static_cast<std::uint32_t>(changes.service_endpoints->size()));
        for (const auto& ep : *changes.service_endpoints) w.str(ep);
    } else {
        w.u8(0);
    }
    if (changes.controller) {
        w.u8(1);
        if (*changes.controller) {
            w.u8(1);
            w.raw((*changes.controller)->bytes());
        } else {
            w.u8(0);
        }
    } else {
        w.u8(0);
    }
}
} // namespace

Address DidDocument::address() const { return derive_address(public_key); }

nlohmann::ordered_json DidDocument::to_json() const {
    nlohmann::ordered_json j;
    j["did"] = did;
    j["controller"] = controller ? nlohmann::ordered_json(controller->display())
                                 : nlohmann::ordered_json(nullptr);
    j["public_key"] = to_hex(public_key);
    nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : attributes) attrs[k] = v;
    j["attributes"] = attrs;
    j["service_endpoints"] = service_endpoints;
    j["active"] = active;
    j["version"] = version;
    return j;
}

std::string did_for_address(const Address& addr) {
    return std::string(kDidPrefix) + to_hex(addr.bytes());
}

Result<Address> address_from_did(std::string_view did) {
    if (did.substr(0, kDidPrefix.size()) != kDidPrefix)
        return Result<Address>::err(Errc::KeyFormat, "did must start with did:rbn:");
    auto hex = did.substr(kDidPrefix.size());
    if (hex.size() != 2 * Address::kSize)
        return Result<Address>::err(Errc::KeyFormat, "did suffix must be 40 hex chars");
    return Address::parse("0x" + std::string(hex));
}

Bytes did_update_preimage(std::string_view did, std::uint64_t next_version,
                          const DidChanges& changes) {
    ByteWriter w;
    w.tag("rbn:did-update:v1");
    w.str(did);
    w.u64(next_version);
    encode_changes(w, changes);
    return w.take();
}

Bytes did_deactivate_preimage(std::string_view did, std::uint64_t next_version) {
    ByteWriter w;
    w.tag("rbn:did-deactivate:v1");
    w.str(did);
    w.u64(next_version);
    return w.take();
}

DidAuth sign_did_update(const KeyPair& signer, std::string_view did,
                        std::uint64_t next_version, const DidChanges& changes) {
    DidAuth auth;
    auth.signer_pubkey = signer.public_key;
    auth.signature = sign(did_update_preimage(did, next_version, changes), signer.secret_key);
    return auth;
}

DidAuth sign_did_deactivate(const KeyPair& signer, std::string_view did,
                            std::uint64_t next_version) {
    DidAuth auth;
    auth.signer_pubkey = signer.public_key;
    auth.signature = sign(did_deactivate_preimage(did, next_version), signer.secret_key);
    return auth;
}

Result<DidDocument> DidRegistry::register_did(const KeyPair& keypair,
                                              std::map<std::string, std::string> attributes,
                                              std::optional<Address> controller) {
    std::unique_lock lock(mutex_);
    DidDocument doc;
    doc.public_key = keypair.public_key;
    doc.did = did_for_address(derive_address(keypair.public_key));
    doc.controller = controller;
    doc.attributes = std::move(attributes);
    doc.active = true;
    doc.version = 1;
    if (docs_.contains(doc.did))
        return Result<DidDocument>::err(Errc::StateError, "did already registered");
    docs_[doc.did] = doc;
    return doc;
}

Result<DidDocument> DidRegistry::resolve(std::string_view did) const {
    std::shared_lock lock(mutex_);
    auto it = docs_.find(std::string(did));
    if (it == docs_.end())
        return Result<DidDocument>::err(Errc::NotFound, "unknown did " + std::string(did));
    return it->second;
}

Result<DidDocument> DidRegistry::authorize(std::string_view did, const DidAuth& auth,
                                           const Bytes& preimage) const {
    auto it = docs_.find(std::string(did));
    if (it == docs_.end())
        return Result<DidDocument>::err(Errc::NotFound, "unknown did " + std::string(did));
    const DidDocument& doc = it->second;
    if (!doc.active)
        return Result<DidDocument>::err(Errc::Deactivated, "did is deactivated");
    Address signer = derive_address(auth.signer_pubkey);
    bool is_subject = auth.signer_pubkey == doc.public_key;
    bool is_controller = doc.controller && signer == *doc.controller;
    if (!is_subject && !is_controller)
        return Result<DidDocument>::err(Errc::Unauthorized, "signer is neither subject nor controller");
    if (!verify(auth.signature, preimage, auth.signer_pubkey))
        return Result<DidDocument>::err(Errc::Unauthorized, "signature does not verify");
    return doc;
}

Result<DidDocument> DidRegistry::update(std::string_view did, const DidChanges& changes,
                                        const DidAuth& auth) {
    std::unique_lock lock(mutex_);
    std::uint64_t next_version = 0;
    {
        auto it = docs_.find(std::string(did));
        if (it != docs_.end()) next_version = it->second.version + 1;
    }
    auto doc = authorize(did, auth, did_update_preimage(did, next_version, changes));
    if (doc.is_err()) return doc;
    DidDocument updated = doc.value();
    for (const auto& [k, v] : changes.set_attributes) updated.attributes[k] = v;
    if (changes.service_endpoints) updated.service_endpoints = *changes.service_endpoints;
    if (changes.controller) updated.controller = *changes.controller;
    updated.version = next_version;
    docs_[std::string(did)] = updated;
    return updated;
}

Result<DidDocument> DidRegistry::deactivate(std::string_view did, const DidAuth& auth) {
    std::unique_lock lock(mutex_);
    std::uint64_t next_version = 0;
    {
        auto it = docs_.find(std::string(did));
        if (it != docs_.end()) next_version = it->second.version + 1;
    }
    auto doc = authorize(did, auth, did_deactivate_preimage(did, next_version));
    if (doc.is_err()) return doc;
    DidDocument updated = doc.value();
    updated.active = false;
    updated.version = next_version;
    docs_[std::string(did)] = updated;
    return updated;
}

std::size_t DidRegistry::size() const {
    std::shared_lock lock(mutex_);
    return docs_.size();
}

} // namespace rbn
