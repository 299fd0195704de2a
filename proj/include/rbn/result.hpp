#pragma once

#include <cassert>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace rbn {

/// Typed failure reasons. Names mirror the user-facing error vocabulary;
/// errc_name() gives the string used in receipts, transcripts and CLI
/// output.
enum class Errc {
    SeedLength,
    KeyFormat,
    NotFound,
    Unauthorized,
    Deactivated,
    BadSignature,
    BadNonce,
    InsufficientFunds,
    UnknownSender,
    DifficultyTooHigh,
    ConstructorError,
    MethodNotFound,
    StateError,
    StepLimitExceeded,
    WrongAmount,
    BadAttestation,
    DoubleVote,
    IllegalMove,
    NotYourTurn,
    WrongStake,
    InsufficientTokenBalance,
    Expired,
    ParseError,
    UnknownAlias,
    UnsortedSteps,
    FormatError,
    ValidationFailure,
};

std::string_view errc_name(Errc code);

struct Error {
    Errc code;
    std::string message;

    std::string to_string() const {
        std::string s{errc_name(code)};
        if (!message.empty()) {
            s += ": ";
            s += message;
        }
        return s;
    }
};

inline Error make_error(Errc code, std::string message = {}) {
    return Error{code, std::move(message)};
}

/// Minimal expected-like result. Success holds a T, failure an Error.
template <typename T>
class Result {
  public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error error) : v_(std::move(error)) {}

    static Result ok(T value) { return Result(std::move(value)); }
    static Result err(Errc code, std::string message = {}) {
        return Result(Error{code, std::move(message)});
    }

    bool is_ok() const { return std::holds_alternative<T>(v_); }
    bool is_err() const { return !is_ok(); }
    explicit operator bool() const { return is_ok(); }

    T& value() {
        assert(is_ok());
        return std::get<T>(v_);
    }
    const T& value() const {
        assert(is_ok());
        return std::get<T>(v_);
    }
    T take() {
        assert(is_ok());
        return std::move(std::get<T>(v_));
    }
    const Error& error() const {
        assert(is_err());
        return std::get<Error>(v_);
    }

  private:
    std::variant<T, Error> v_;
};

using Status = Result<std::monostate>;

inline Status ok_status() { return Status(std::monostate{}); }

} // namespace rbn
