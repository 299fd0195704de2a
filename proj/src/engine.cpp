#include "rbn/engine.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

nlohmann::ordered_json ChainEvent::to_json() const {
    nlohmann::ordered_json j;
    j["contract"] = contract.display();
    j["fields"] = field_map_to_json(fields);
    j["height"] = height;
    j["name"] = name;
    return j;
}

void CallContext::step(std::uint64_t n) {
    steps_ += n;
    if (hook_ && *hook_) (*hook_)(steps_);
    if (steps_ > step_limit_)
        contract_fail(Errc::StepLimitExceeded,
                      "transition exceeded " + std::to_string(step_limit_) + " steps");
}

void CallContext::pay(const Address& to, std::uint64_t amount) {
    if (amount > available_ - total_paid_)
        contract_fail(Errc::StateError, "contract payout exceeds held funds");
    total_paid_ += amount;
    payouts_.emplace_back(to, amount);
}

void CallContext::emit(std::string name, FieldMap fields) {
    events_.emplace_back(std::move(name), std::move(fields));
}

void CallContext::set_result(std::string key, Value v) { results_[std::move(key)] = std::move(v); }

std::uint64_t ContractHost::held_funds(const Address& addr) const {
    auto it = instances_.find(addr);
    return it == instances_.end() ? 0 : it->second.held_funds;
}

std::uint64_t ContractHost::total_held() const {
    std::uint64_t sum = 0;
    for (const auto& [addr, inst] : instances_) sum += inst.held_funds;
    return sum;
}

Result<nlohmann::ordered_json> ContractHost::state_json(const Address& addr) const {
    auto it = instances_.find(addr);
    if (it == instances_.end())
        return Result<nlohmann::ordered_json>::err(Errc::NotFound,
                                                   "no contract at " + addr.display());
    nlohmann::ordered_json j;
    j["address"] = addr.display();
    j["created_at"] = it->second.created_at;
    j["held_funds"] = it->second.held_funds;
    j["kind"] = std::string(it->second.contract->kind());
    j["state"] = it->second.contract->state_json();
    return j;
}

nlohmann::ordered_json ContractHost::all_state_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [addr, inst] : instances_) {
        nlohmann::ordered_json entry;
        entry["created_at"] = inst.created_at;
        entry["held_funds"] = inst.held_funds;
        entry["kind"] = std::string(inst.contract->kind());
        entry["state"] = inst.contract->state_json();
        j[addr.display()] = entry;
    }
    return j;
}

std::vector<Address> ContractHost::addresses() const {
    std::vector<Address> out;
    out.reserve(instances_.size());
    for (const auto& [addr, inst] : instances_) out.push_back(addr);
    return out;
}

Result<CallOutcome> ContractHost::deploy(const Address& deployer, std::uint64_t deployer_nonce,
                                         std::uint64_t attached, std::uint64_t height,
                                         const std::vector<Value>& deploy_args) {
    if (deploy_args.empty() || !deploy_args[0].is_string())
        return Result<CallOutcome>::err(Errc::ConstructorError, "deploy needs a kind string");
    std::string kind = deploy_args[0].as_string();
    if (!is_known_kind(kind))
        return Result<CallOutcome>::err(Errc::ConstructorError, "unknown contract kind " + kind);

    Address addr = derive_contract_address(deployer, deployer_nonce);
    if (instances_.contains(addr))
        return Result<CallOutcome>::err(Errc::StateError, "contract address collision");

    DeployContext ctx{addr, deployer, attached, height};
    std::vector<Value> ctor_args(deploy_args.begin() + 1, deploy_args.end());
    auto contract = make_contract(kind, ctx, ctor_args);
    if (contract.is_err()) return contract.error();

    Instance inst;
    inst.contract = contract.take();
    inst.held_funds = attached;
    inst.created_at = height;
    instances_.emplace(addr, std::move(inst));

    CallOutcome out;
    out.contract = addr;
    ChainEvent ev;
    ev.height = height;
    ev.contract = addr;
    ev.name = "Deployed";
    ev.fields["kind"] = Value(kind);
    out.events.push_back(std::move(ev));
    out.result["contract"] = Value(addr.display());
    return out;
}

Result<CallOutcome> ContractHost::call(const Address& caller, const Address& contract,
                                       std::uint64_t attached, std::uint64_t height,
                                       std::string_view method, const std::vector<Value>& args) {
    auto it = instances_.find(contract);
    if (it == instances_.end())
        return Result<CallOutcome>::err(Errc::StateError, "no contract at " + contract.display());
    Instance& inst = it->second;

    if (!inst.contract->has_method(method))
        return Result<CallOutcome>::err(Errc::MethodNotFound,
                                        "no method " + std::string(method) + " on " +
                                            std::string(inst.contract->kind()));
    if (attached > 0 && !inst.contract->payable(method))
        return Result<CallOutcome>::err(Errc::WrongAmount,
                                        std::string(method) + " is not payable");

    // Run the transition on a clone; commit only if it returns cleanly.
    std::unique_ptr<ContractBase> scratch = inst.contract->clone();
    CallContext ctx(caller, attached, height, inst.held_funds + attached, step_limit_,
                    step_hook_ ? &step_hook_ : nullptr);
    try {
        scratch->call(ctx, method, args);
    } catch (const ContractError& e) {
        return Result<CallOutcome>::err(e.error().code, e.error().message);
    }

    inst.contract = std::move(scratch);
    inst.held_funds = inst.held_funds + attached - ctx.total_paid();

    CallOutcome out;
    out.contract = contract;
    out.result = std::move(ctx.results());
    out.payouts = ctx.payouts();
    for (auto& [name, fields] : ctx.events()) {
        ChainEvent ev;
        ev.height = height;
        ev.contract = contract;
        ev.name = std::move(name);
        ev.fields = std::move(fields);
        out.events.push_back(std::move(ev));
    }
    return out;
}

} // namespace rbn
