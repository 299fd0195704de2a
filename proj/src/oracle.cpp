#include "rbn/oracle.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

Bytes Attestation::signing_preimage() const {
    ByteWriter w;
    w.tag("rbn:att:v1");
    w.str(subject);
    value.encode(w);
    w.u64(height);
    return w.take();
}

Bytes Attestation::encode() const {
    ByteWriter w;
    w.raw(oracle.bytes());
    w.str(subject);
    value.encode(w);
    w.u64(height);
    w.raw(pubkey);
    w.raw(signature);
    return w.take();
}

Result<Attestation> Attestation::decode(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    Attestation att;
    Bytes addr = r.raw(Address::kSize);
    std::array<std::uint8_t, Address::kSize> arr{};
    if (r.ok()) std::copy(addr.begin(), addr.end(), arr.begin());
    att.oracle = Address(arr);
    att.subject = r.str();
    auto v = Value::decode(r);
    if (v.is_err()) return v.error();
    att.value = v.take();
    att.height = r.u64();
    Bytes pk = r.raw(kPublicKeySize);
    Bytes sig = r.raw(kSignatureSize);
    if (!r.done()) return Result<Attestation>::err(Errc::FormatError, "bad attestation bytes");
    std::copy(pk.begin(), pk.end(), att.pubkey.begin());
    std::copy(sig.begin(), sig.end(), att.signature.begin());
    return att;
}

nlohmann::ordered_json Attestation::to_json() const {
    nlohmann::ordered_json j;
    j["height"] = height;
    j["oracle"] = oracle.display();
    j["pubkey"] = to_hex(pubkey);
    j["signature"] = to_hex(signature);
    j["subject"] = subject;
    j["value"] = value.to_json();
    return j;
}

bool verify_attestation(const Attestation& att, const Address& expected_oracle) {
    if (att.oracle != expected_oracle) return false;
    if (derive_address(att.pubkey) != att.oracle) return false;
    return verify(att.signature, att.signing_preimage(), att.pubkey);
}

OracleAgent::OracleAgent(const KeyPair& keys)
    : keys_(keys), address_(derive_address(keys.public_key)) {}

Result<Attestation> OracleAgent::publish(const KeyPair& keys, std::string subject,
                                         Value value, std::uint64_t height) {
    if (keys.public_key != keys_.public_key)
        return Result<Attestation>::err(Errc::Unauthorized,
                                        "publish requires this oracle's own key");
    Attestation att;
    att.oracle = address_;
    att.subject = std::move(subject);
    att.value = std::move(value);
    att.height = height;
    att.pubkey = keys.public_key;
    att.signature = sign(att.signing_preimage(), keys.secret_key);
    return att;
}

void AttestationStore::add(Attestation att) { attestations_.push_back(std::move(att)); }

std::optional<Attestation> AttestationStore::query_latest(std::string_view subject) const {
    std::optional<Attestation> best;
    for (const Attestation& att : attestations_) {
        if (att.subject != subject) continue;
        if (!best || att.height >= best->height) best = att;
    }
    return best;
}

} // namespace rbn
