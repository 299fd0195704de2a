#include "rbn/tx.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

namespace {
constexpr std::string_view kTxDomain = "rbn:tx:v1";

Result<Address> parse_address_field(const nlohmann::ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        return Result<Address>::err(Errc::FormatError, std::string(key) + " missing");
    return Address::parse(j[key].get<std::string>());
}

Result<std::uint64_t> parse_u64_field(const nlohmann::ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        return Result<std::uint64_t>::err(Errc::FormatError,
                                          std::string(key) + " must be unsigned integer");
    return j[key].get<std::uint64_t>();
}
} // namespace

void CallPayload::encode(ByteWriter& w) const {
    w.str(method);
    w.u32(static_cast<std::uint32_t>(args.size()));
    for (const Value& v : args) v.encode(w);
}

Result<CallPayload> CallPayload::decode(ByteReader& r) {
    CallPayload p;
    p.method = r.str();
    std::uint32_t n = r.u32();
    if (!r.ok()) return Result<CallPayload>::err(Errc::FormatError, "truncated payload");
    p.args.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto v = Value::decode(r);
        if (v.is_err()) return v.error();
        p.args.push_back(v.take());
    }
    return p;
}

nlohmann::ordered_json CallPayload::to_json() const {
    nlohmann::ordered_json j;
    j["args"] = nlohmann::ordered_json::array();
    for (const Value& v : args) j["args"].push_back(v.to_json());
    j["method"] = method;
    return j;
}

Result<CallPayload> CallPayload::from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("args") || !j.contains("method") || j.size() != 2 ||
        !j["args"].is_array() || !j["method"].is_string())
        return Result<CallPayload>::err(Errc::FormatError, "bad payload object");
    CallPayload p;
    p.method = j["method"].get<std::string>();
    for (const auto& a : j["args"]) {
        auto v = Value::from_json(a);
        if (v.is_err()) return v.error();
        p.args.push_back(v.take());
    }
    return p;
}

Bytes SignedTransaction::signing_preimage() const {
    ByteWriter w;
    w.tag(kTxDomain);
    w.raw(from.bytes());
    w.raw(to.bytes());
    w.u64(nonce);
    w.u64(amount);
    if (payload) {
        w.u8(1);
        payload->encode(w);
    } else {
        w.u8(0);
    }
    w.raw(pubkey);
    return w.take();
}

Bytes SignedTransaction::encode() const {
    Bytes out = signing_preimage();
    out.insert(out.end(), signature.begin(), signature.end());
    return out;
}

bool SignedTransaction::verify_signature() const {
    if (derive_address(pubkey) != from) return false;
    return verify(signature, signing_preimage(), pubkey);
}

nlohmann::ordered_json SignedTransaction::to_json() const {
    nlohmann::ordered_json j;
    j["amount"] = amount;
    j["from"] = from.display();
    j["nonce"] = nonce;
    j["payload"] = payload ? payload->to_json() : nlohmann::ordered_json(nullptr);
    j["pubkey"] = to_hex(pubkey);
    j["signature"] = to_hex(signature);
    j["to"] = to.display();
    return j;
}

Result<SignedTransaction> SignedTransaction::from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || j.size() != 7)
        return Result<SignedTransaction>::err(Errc::FormatError, "tx must have 7 fields");
    SignedTransaction tx;
    auto amount = parse_u64_field(j, "amount");
    if (amount.is_err()) return amount.error();
    tx.amount = amount.value();
    auto from = parse_address_field(j, "from");
    if (from.is_err()) return from.error();
    tx.from = from.value();
    auto nonce = parse_u64_field(j, "nonce");
    if (nonce.is_err()) return nonce.error();
    tx.nonce = nonce.value();
    if (!j.contains("payload"))
        return Result<SignedTransaction>::err(Errc::FormatError, "payload missing");
    if (!j["payload"].is_null()) {
        auto p = CallPayload::from_json(j["payload"]);
        if (p.is_err()) return p.error();
        tx.payload = p.take();
    }
    if (!j.contains("pubkey") || !j["pubkey"].is_string())
        return Result<SignedTransaction>::err(Errc::FormatError, "pubkey missing");
    auto pk_bytes = from_hex(j["pubkey"].get<std::string>());
    if (!pk_bytes)
        return Result<SignedTransaction>::err(Errc::FormatError, "pubkey not hex");
    auto pk = public_key_from_bytes(*pk_bytes);
    if (pk.is_err()) return pk.error();
    tx.pubkey = pk.value();
    if (!j.contains("signature") || !j["signature"].is_string())
        return Result<SignedTransaction>::err(Errc::FormatError, "signature missing");
    auto sig_bytes = from_hex(j["signature"].get<std::string>());
    if (!sig_bytes)
        return Result<SignedTransaction>::err(Errc::FormatError, "signature not hex");
    auto sig = signature_from_bytes(*sig_bytes);
    if (sig.is_err()) return sig.error();
    tx.signature = sig.value();
    auto to = parse_address_field(j, "to");
    if (to.is_err()) return to.error();
    tx.to = to.value();
    return tx;
}

namespace {
SignedTransaction finish(SignedTransaction tx, const KeyPair& sender) {
    tx.from = derive_address(sender.public_key);
    tx.pubkey = sender.public_key;
    tx.signature = sign(tx.signing_preimage(), sender.secret_key);
    return tx;
}
} // namespace

SignedTransaction make_transfer(const KeyPair& sender, const Address& to,
                                std::uint64_t nonce, std::uint64_t amount) {
    SignedTransaction tx;
    tx.to = to;
    tx.nonce = nonce;
    tx.amount = amount;
    return finish(std::move(tx), sender);
}

SignedTransaction make_call(const KeyPair& sender, const Address& contract,
                            std::uint64_t nonce, std::uint64_t amount,
                            std::string method, std::vector<Value> args) {
    SignedTransaction tx;
    tx.to = contract;
    tx.nonce = nonce;
    tx.amount = amount;
    tx.payload = CallPayload{std::move(method), std::move(args)};
    return finish(std::move(tx), sender);
}

SignedTransaction make_deploy(const KeyPair& sender, std::uint64_t nonce,
                              std::uint64_t amount, std::string kind,
                              std::vector<Value> ctor_args) {
    std::vector<Value> args;
    args.reserve(ctor_args.size() + 1);
    args.emplace_back(std::move(kind));
    for (auto& a : ctor_args) args.push_back(std::move(a));
    SignedTransaction tx;
    tx.to = Address::zero();
    tx.nonce = nonce;
    tx.amount = amount;
    tx.payload = CallPayload{"deploy", std::move(args)};
    return finish(std::move(tx), sender);
}

} // namespace rbn
