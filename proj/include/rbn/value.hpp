#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/bytes.hpp"
#include "rbn/result.hpp"

namespace rbn {

/// Canonical scalar carried in contract-call arguments, event fields and
/// attestations. Four alternatives, each with one byte encoding and one
/// JSON form:
///   bool    -> tag 0x00, JSON true/false
///   u64     -> tag 0x01, JSON unsigned integer
///   string  -> tag 0x02, JSON string
///   bytes   -> tag 0x03, JSON {"hex": "<lowercase hex>"}
/// Addresses travel as strings in display form ("0x...").
class Value {
  public:
    Value() : v_(std::uint64_t{0}) {}
    Value(bool b) : v_(b) {}
    Value(std::uint64_t n) : v_(n) {}
    Value(int n) : v_(static_cast<std::uint64_t>(n)) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(Bytes b) : v_(std::move(b)) {}

    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_u64() const { return std::holds_alternative<std::uint64_t>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_bytes() const { return std::holds_alternative<Bytes>(v_); }

    bool as_bool() const { return std::get<bool>(v_); }
    std::uint64_t as_u64() const { return std::get<std::uint64_t>(v_); }
    const std::string& as_string() const { return std::get<std::string>(v_); }
    const Bytes& as_bytes() const { return std::get<Bytes>(v_); }

    void encode(ByteWriter& w) const;
    static Result<Value> decode(ByteReader& r);

    nlohmann::ordered_json to_json() const;
    static Result<Value> from_json(const nlohmann::ordered_json& j);

    bool operator==(const Value&) const = default;

  private:
    std::variant<bool, std::uint64_t, std::string, Bytes> v_;
};

/// Deterministically ordered (key-sorted) field map used by events and
/// call results.
using FieldMap = std::map<std::string, Value>;

nlohmann::ordered_json field_map_to_json(const FieldMap& fields);
Result<FieldMap> field_map_from_json(const nlohmann::ordered_json& j);

} // namespace rbn
