#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/value.hpp"

namespace rbn {

/// Event record appended during block execution; order matches
/// transaction execution order within a block.
struct ChainEvent {
    std::uint64_t height = 0;
    Address contract;
    std::string name;
    FieldMap fields;

    nlohmann::ordered_json to_json() const;
};

/// Abort signal for a contract transition. The engine catches it and
/// discards every effect of the call.
class ContractError : public std::exception {
  public:
    explicit ContractError(Error err) : err_(std::move(err)) {}
    const Error& error() const { return err_; }
    const char* what() const noexcept override { return err_.message.c_str(); }

  private:
    Error err_;
};

[[noreturn]] inline void contract_fail(Errc code, std::string message) {
    throw ContractError(Error{code, std::move(message)});
}

inline void contract_require(bool cond, Errc code, std::string message) {
    if (!cond) contract_fail(code, std::move(message));
}

/// Per-call execution context handed to a contract transition. Funds can
/// only move out through pay(), capped by the instance's held funds plus
/// the attached amount; step() enforces the termination cap.
class CallContext {
  public:
    using StepHook = std::function<void(std::uint64_t step)>;

    CallContext(Address caller, std::uint64_t attached, std::uint64_t height,
                std::uint64_t available, std::uint64_t step_limit, const StepHook* hook)
        : caller_(std::move(caller)), attached_(attached), height_(height),
          available_(available), step_limit_(step_limit), hook_(hook) {}

    const Address& caller() const { return caller_; }
    std::uint64_t attached() const { return attached_; }
    std::uint64_t height() const { return height_; }

    void step(std::uint64_t n = 1);
    void pay(const Address& to, std::uint64_t amount);
    void emit(std::string name, FieldMap fields);
    void set_result(std::string key, Value v);

    std::uint64_t total_paid() const { return total_paid_; }
    const std::vector<std::pair<Address, std::uint64_t>>& payouts() const { return payouts_; }
    std::vector<std::pair<std::string, FieldMap>>& events() { return events_; }
    FieldMap& results() { return results_; }

  private:
    Address caller_;
    std::uint64_t attached_;
    std::uint64_t height_;
    std::uint64_t available_;
    std::uint64_t step_limit_;
    const StepHook* hook_;
    std::uint64_t steps_ = 0;
    std::uint64_t total_paid_ = 0;
    std::vector<std::pair<Address, std::uint64_t>> payouts_;
    std::vector<std::pair<std::string, FieldMap>> events_;
    FieldMap results_;
};

/// Context available to contract constructors.
struct DeployContext {
    Address self;
    Address deployer;
    std::uint64_t attached = 0;
    std::uint64_t height = 0;
};

/// A contract is a value-semantic state machine keyed by `kind`. The
/// engine runs transitions on a clone and commits only on success, so a
/// throw anywhere leaves the instance untouched.
class ContractBase {
  public:
    virtual ~ContractBase() = default;
    virtual std::string_view kind() const = 0;
    virtual bool has_method(std::string_view method) const = 0;
    virtual bool payable(std::string_view method) const = 0;
    virtual void call(CallContext& ctx, std::string_view method,
                      const std::vector<Value>& args) = 0;
    virtual nlohmann::ordered_json state_json() const = 0;
    virtual std::unique_ptr<ContractBase> clone() const = 0;
};

/// Constructs a contract of the given kind; ConstructorError on bad args.
Result<std::unique_ptr<ContractBase>> make_contract(std::string_view kind,
                                                    const DeployContext& ctx,
                                                    const std::vector<Value>& args);
bool is_known_kind(std::string_view kind);

/// Outcome of a successful deploy or call, as committed.
struct CallOutcome {
    FieldMap result;
    std::vector<std::pair<Address, std::uint64_t>> payouts;
    std::vector<ChainEvent> events;
    Address contract;
};

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

/// Owns all deployed instances and their held funds. Single writer;
/// callers serialize execution (the block producer does).
class ContractHost {
  public:
    Result<CallOutcome> deploy(const Address& deployer, std::uint64_t deployer_nonce,
                               std::uint64_t attached, std::uint64_t height,
                               const std::vector<Value>& deploy_args);
    Result<CallOutcome> call(const Address& caller, const Address& contract,
                             std::uint64_t attached, std::uint64_t height,
                             std::string_view method, const std::vector<Value>& args);

    bool exists(const Address& addr) const { return instances_.contains(addr); }
    std::uint64_t held_funds(const Address& addr) const;
    std::uint64_t total_held() const;
    Result<nlohmann::ordered_json> state_json(const Address& addr) const;
    nlohmann::ordered_json all_state_json() const;
    std::vector<Address> addresses() const;

    void set_step_limit(std::uint64_t limit) { step_limit_ = limit; }
    void set_step_hook(CallContext::StepHook hook) { step_hook_ = std::move(hook); }

  private:
    struct Instance {
        std::unique_ptr<ContractBase> contract;
        std::uint64_t held_funds = 0;
        std::uint64_t created_at = 0;
    };

    std::map<Address, Instance> instances_;
    std::uint64_t step_limit_ = kDefaultStepLimit;
    CallContext::StepHook step_hook_;
};

} // namespace rbn
