#include "rbn/value.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

namespace {
constexpr std::uint8_t kTagBool = 0x00;
constexpr std::uint8_t kTagU64 = 0x01;
constexpr std::uint8_t kTagString = 0x02;
constexpr std::uint8_t kTagBytes = 0x03;
} // namespace

void Value::encode(ByteWriter& w) const {
    if (is_bool()) {
        w.u8(kTagBool);
        w.u8(as_bool() ? 1 : 0);
    } else if (is_u64()) {
        w.u8(kTagU64);
        w.u64(as_u64());
    } else if (is_string()) {
        w.u8(kTagString);
        w.str(as_string());
    } else {
        w.u8(kTagBytes);
        w.blob(as_bytes());
    }
}

Result<Value> Value::decode(ByteReader& r) {
    std::uint8_t tag = r.u8();
    if (!r.ok()) return Result<Value>::err(Errc::FormatError, "truncated value");
    switch (tag) {
    case kTagBool: {
        std::uint8_t b = r.u8();
        if (!r.ok() || b > 1) return Result<Value>::err(Errc::FormatError, "bad bool");
        return Value(b == 1);
    }
    case kTagU64: {
        std::uint64_t n = r.u64();
        if (!r.ok()) return Result<Value>::err(Errc::FormatError, "truncated u64");
        return Value(n);
    }
    case kTagString: {
        std::string s = r.str();
        if (!r.ok()) return Result<Value>::err(Errc::FormatError, "truncated string");
        return Value(std::move(s));
    }
    case kTagBytes: {
        Bytes b = r.blob();
        if (!r.ok()) return Result<Value>::err(Errc::FormatError, "truncated bytes");
        return Value(std::move(b));
    }
    default:
        return Result<Value>::err(Errc::FormatError, "unknown value tag");
    }
}

nlohmann::ordered_json Value::to_json() const {
    if (is_bool()) return as_bool();
    if (is_u64()) return as_u64();
    if (is_string()) return as_string();
    nlohmann::ordered_json j;
    j["hex"] = to_hex(as_bytes());
    return j;
}

Result<Value> Value::from_json(const nlohmann::ordered_json& j) {
    if (j.is_boolean()) return Value(j.get<bool>());
    if (j.is_number_unsigned()) return Value(j.get<std::uint64_t>());
    if (j.is_string()) return Value(j.get<std::string>());
    if (j.is_object() && j.size() == 1 && j.contains("hex") && j["hex"].is_string()) {
        auto bytes = from_hex(j["hex"].get<std::string>());
        if (!bytes) return Result<Value>::err(Errc::FormatError, "bad hex in bytes value");
        return Value(std::move(*bytes));
    }
    return Result<Value>::err(Errc::FormatError, "unsupported value json");
}

nlohmann::ordered_json field_map_to_json(const FieldMap& fields) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields) j[k] = v.to_json();
    return j;
}

Result<FieldMap> field_map_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object()) return Result<FieldMap>::err(Errc::FormatError, "fields must be object");
    FieldMap out;
    std::string prev;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first && !(prev < it.key()))
            return Result<FieldMap>::err(Errc::FormatError, "field keys not sorted");
        first = false;
        prev = it.key();
        auto v = Value::from_json(it.value());
        if (v.is_err()) return v.error();
        out.emplace(it.key(), v.take());
    }
    return out;
}

} // namespace rbn
