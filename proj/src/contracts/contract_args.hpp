#pragma once

// Argument accessors for contract constructors and methods. All throw
// ContractError with the caller-chosen code (ConstructorError for
// constructors, StateError for method transitions).

#include <string>
#include <vector>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"
#include "rbn/value.hpp"

namespace rbn::cargs {

inline void expect_count(const std::vector<Value>& args, std::size_t n, Errc code) {
    contract_require(args.size() == n, code,
                     "expected " + std::to_string(n) + " arguments, got " +
                         std::to_string(args.size()));
}

inline std::uint64_t u64(const std::vector<Value>& args, std::size_t i, const char* name,
                         Errc code) {
    contract_require(i < args.size() && args[i].is_u64(), code,
                     std::string(name) + " must be an unsigned integer");
    return args[i].as_u64();
}

inline const std::string& str(const std::vector<Value>& args, std::size_t i, const char* name,
                              Errc code) {
    contract_require(i < args.size() && args[i].is_string(), code,
                     std::string(name) + " must be a string");
    return args[i].as_string();
}

inline bool boolean(const std::vector<Value>& args, std::size_t i, const char* name, Errc code) {
    contract_require(i < args.size() && args[i].is_bool(), code,
                     std::string(name) + " must be a bool");
    return args[i].as_bool();
}

inline const Bytes& bytes(const std::vector<Value>& args, std::size_t i, const char* name,
                          Errc code) {
    contract_require(i < args.size() && args[i].is_bytes(), code,
                     std::string(name) + " must be bytes");
    return args[i].as_bytes();
}

inline Address addr(const std::vector<Value>& args, std::size_t i, const char* name, Errc code) {
    const std::string& s = str(args, i, name, code);
    auto a = Address::parse(s);
    contract_require(a.is_ok(), code, std::string(name) + " is not a valid address");
    return a.value();
}

} // namespace rbn::cargs
