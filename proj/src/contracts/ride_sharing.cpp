#include "rbn/contracts/ride_sharing.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"

namespace rbn {

namespace {
bool valid_param(const std::string& name) {
    return name == "service_fee" || name == "maintenance_fund_rate";
}

void check_param_value(const std::string& name, std::uint64_t value, Errc code) {
    if (name == "maintenance_fund_rate")
        contract_require(value <= 100, code, "maintenance_fund_rate is a percent, max 100");
    if (name == "service_fee")
        contract_require(value > 0, code, "service_fee must be positive");
}
} // namespace

nlohmann::ordered_json BallotState::to_json() const {
    nlohmann::ordered_json j;
    j["closed"] = closed;
    j["deadline"] = deadline;
    j["executed"] = executed;
    j["param"] = param;
    j["proposer"] = proposer.display();
    j["value"] = value;
    nlohmann::ordered_json v = nlohmann::ordered_json::object();
    for (const auto& [addr, yes] : votes) v[addr.display()] = yes;
    j["votes"] = v;
    return j;
}

Result<std::unique_ptr<ContractBase>> RideSharingContract::create(const DeployContext& ctx,
                                                                  const std::vector<Value>& args) {
    (void)ctx;
    try {
        contract_require(args.size() >= 5, Errc::ConstructorError,
                         "need vehicle, vin, service_fee, maintenance_fund_rate, owners...");
        auto c = std::make_unique<RideSharingContract>();
        c->vehicle_ = cargs::addr(args, 0, "vehicle", Errc::ConstructorError);
        c->vin_ = cargs::bytes(args, 1, "vin", Errc::ConstructorError);
        contract_require(c->vin_.size() == 32, Errc::ConstructorError, "vin must be 32 bytes");
        std::uint64_t fee = cargs::u64(args, 2, "service_fee", Errc::ConstructorError);
        std::uint64_t rate = cargs::u64(args, 3, "maintenance_fund_rate", Errc::ConstructorError);
        check_param_value("service_fee", fee, Errc::ConstructorError);
        check_param_value("maintenance_fund_rate", rate, Errc::ConstructorError);
        c->params_["maintenance_fund_rate"] = rate;
        c->params_["service_fee"] = fee;
        std::set<Address> seen;
        for (std::size_t i = 4; i < args.size(); ++i) {
            Address owner = cargs::addr(args, i, "owner", Errc::ConstructorError);
            contract_require(seen.insert(owner).second, Errc::ConstructorError,
                             "duplicate owner " + owner.display());
            c->owners_.push_back(owner);
        }
        return Result<std::unique_ptr<ContractBase>>::ok(std::move(c));
    } catch (const ContractError& e) {
        return Result<std::unique_ptr<ContractBase>>::err(e.error().code, e.error().message);
    }
}

bool RideSharingContract::has_method(std::string_view m) const {
    static const std::set<std::string_view> methods = {
        "set_owners",    "approve_transfer", "accept_transfer", "request_ride",
        "complete_ride", "withdraw_maintenance", "propose",     "vote",
        "execute",       "vin",              "owners"};
    return methods.contains(m);
}

bool RideSharingContract::is_owner(const Address& a) const {
    return std::find(owners_.begin(), owners_.end(), a) != owners_.end();
}

void RideSharingContract::require_owner(const Address& a) const {
    contract_require(is_owner(a), Errc::Unauthorized, a.display() + " is not an owner");
}

void RideSharingContract::call(CallContext& ctx, std::string_view method,
                               const std::vector<Value>& args) {
    ctx.step();
    if (method == "set_owners") {
        set_owners(ctx, args);
    } else if (method == "approve_transfer") {
        approve_transfer(ctx, args);
    } else if (method == "accept_transfer") {
        accept_transfer(ctx);
    } else if (method == "request_ride") {
        request_ride(ctx);
    } else if (method == "complete_ride") {
        complete_ride(ctx);
    } else if (method == "withdraw_maintenance") {
        withdraw_maintenance(ctx, args);
    } else if (method == "propose") {
        propose(ctx, args);
    } else if (method == "vote") {
        vote(ctx, args);
    } else if (method == "execute") {
        execute(ctx, args);
    } else if (method == "vin") {
        ctx.set_result("vin", Value(vin_));
    } else if (method == "owners") {
        for (std::size_t i = 0; i < owners_.size(); ++i)
            ctx.set_result("owner" + std::to_string(i), Value(owners_[i].display()));
    }
}

void RideSharingContract::set_owners(CallContext& ctx, const std::vector<Value>& args) {
    require_owner(ctx.caller());
    contract_require(!args.empty(), Errc::StateError, "owners list must be non-empty");
    std::vector<Address> next;
    std::set<Address> seen;
    for (std::size_t i = 0; i < args.size(); ++i) {
        ctx.step();
        Address owner = cargs::addr(args, i, "owner", Errc::StateError);
        contract_require(seen.insert(owner).second, Errc::StateError, "duplicate owner");
        next.push_back(owner);
    }
    owners_ = std::move(next);
    pending_transfer_.reset();
}

void RideSharingContract::approve_transfer(CallContext& ctx, const std::vector<Value>& args) {
    require_owner(ctx.caller());
    cargs::expect_count(args, 1, Errc::StateError);
    Address to = cargs::addr(args, 0, "to", Errc::StateError);
    contract_require(!is_owner(to), Errc::StateError, "target is already an owner");
    pending_transfer_ = {ctx.caller(), to};
    ctx.emit("Appr", {{"_approved", Value(to.display())},
                      {"_owner", Value(ctx.caller().display())}});
}

void RideSharingContract::accept_transfer(CallContext& ctx) {
    contract_require(pending_transfer_.has_value(), Errc::StateError, "no pending transfer");
    auto [from, to] = *pending_transfer_;
    contract_require(ctx.caller() == to, Errc::Unauthorized,
                     "only the approved transferee may accept");
    auto it = std::find(owners_.begin(), owners_.end(), from);
    contract_require(it != owners_.end(), Errc::StateError, "approving owner no longer owns");
    *it = to;
    pending_transfer_.reset();
    ctx.emit("Transf", {{"_from", Value(from.display())}, {"_to", Value(to.display())}});
}

void RideSharingContract::request_ride(CallContext& ctx) {
    contract_require(!passenger_.has_value(), Errc::StateError, "ride already in progress");
    std::uint64_t fee = params_.at("service_fee");
    contract_require(ctx.attached() == fee, Errc::WrongAmount,
                     "ride costs " + std::to_string(fee) + ", attached " +
                         std::to_string(ctx.attached()));
    passenger_ = ctx.caller();
    ride_cost_ = ctx.attached();
    current_fare_ = ctx.attached();
    ctx.emit("RideReq", {{"_passengerAddr", Value(ctx.caller().display())},
                         {"rideCost", Value(ride_cost_)}});
}

void RideSharingContract::complete_ride(CallContext& ctx) {
    contract_require(ctx.caller() == vehicle_, Errc::Unauthorized,
                     "only the vehicle completes rides");
    contract_require(passenger_.has_value(), Errc::StateError, "no ride in progress");
    std::uint64_t maintenance_share = current_fare_ * params_.at("maintenance_fund_rate") / 100;
    std::uint64_t owner_share = current_fare_ - maintenance_share;
    std::uint64_t per_owner = owner_share / owners_.size();
    std::uint64_t remainder = owner_share % owners_.size();
    for (std::size_t i = 0; i < owners_.size(); ++i) {
        ctx.step();
        std::uint64_t amount = per_owner + (i == 0 ? remainder : 0);
        if (amount > 0) ctx.pay(owners_[i], amount);
    }
    maintenance_fund_ += maintenance_share;
    current_fare_ = 0;
    passenger_.reset();
}

void RideSharingContract::withdraw_maintenance(CallContext& ctx, const std::vector<Value>& args) {
    contract_require(ctx.caller() == vehicle_, Errc::Unauthorized,
                     "only the vehicle draws on the maintenance fund");
    cargs::expect_count(args, 1, Errc::StateError);
    std::uint64_t amount = cargs::u64(args, 0, "amount", Errc::StateError);
    contract_require(amount <= maintenance_fund_, Errc::InsufficientFunds,
                     "maintenance fund holds " + std::to_string(maintenance_fund_));
    maintenance_fund_ -= amount;
    ctx.pay(vehicle_, amount);
}

void RideSharingContract::propose(CallContext& ctx, const std::vector<Value>& args) {
    require_owner(ctx.caller());
    cargs::expect_count(args, 3, Errc::StateError);
    const std::string& param = cargs::str(args, 0, "param", Errc::StateError);
    std::uint64_t value = cargs::u64(args, 1, "value", Errc::StateError);
    std::uint64_t deadline = cargs::u64(args, 2, "deadline", Errc::StateError);
    contract_require(valid_param(param), Errc::StateError, "unknown parameter " + param);
    check_param_value(param, value, Errc::StateError);
    contract_require(deadline >= ctx.height(), Errc::StateError, "deadline already passed");
    BallotState ballot;
    ballot.proposer = ctx.caller();
    ballot.param = param;
    ballot.value = value;
    ballot.deadline = deadline;
    ballots_.push_back(std::move(ballot));
    ctx.set_result("ballot", Value(static_cast<std::uint64_t>(ballots_.size() - 1)));
}

void RideSharingContract::vote(CallContext& ctx, const std::vector<Value>& args) {
    require_owner(ctx.caller());
    cargs::expect_count(args, 2, Errc::StateError);
    std::uint64_t id = cargs::u64(args, 0, "ballot", Errc::StateError);
    bool yes = cargs::boolean(args, 1, "yes", Errc::StateError);
    contract_require(id < ballots_.size(), Errc::StateError, "no such ballot");
    BallotState& ballot = ballots_[id];
    contract_require(!ballot.closed, Errc::StateError, "ballot already executed");
    contract_require(!ballot.votes.contains(ctx.caller()), Errc::DoubleVote,
                     "owner already voted");
    contract_require(ctx.height() <= ballot.deadline, Errc::StateError, "voting closed");
    ballot.votes[ctx.caller()] = yes;
}

void RideSharingContract::execute(CallContext& ctx, const std::vector<Value>& args) {
    require_owner(ctx.caller());
    cargs::expect_count(args, 1, Errc::StateError);
    std::uint64_t id = cargs::u64(args, 0, "ballot", Errc::StateError);
    contract_require(id < ballots_.size(), Errc::StateError, "no such ballot");
    BallotState& ballot = ballots_[id];
    contract_require(!ballot.closed, Errc::StateError, "ballot already executed");

    std::uint64_t owner_count = owners_.size();
    std::uint64_t yes = 0;
    std::uint64_t cast = 0;
    for (const auto& [owner, vote_yes] : ballot.votes) {
        ctx.step();
        if (!is_owner(owner)) continue; // membership may have changed
        ++cast;
        if (vote_yes) ++yes;
    }
    std::uint64_t majority = owner_count / 2; // pass needs yes > floor(n/2)
    bool passed_already = yes > majority;
    bool failed_already = yes + (owner_count - cast) <= majority;
    bool decided = passed_already || failed_already;
    contract_require(ctx.height() > ballot.deadline || decided, Errc::StateError,
                     "ballot still open");

    bool passed = yes > majority;
    if (passed) {
        params_[ballot.param] = ballot.value;
        ballot.executed = true;
    }
    ballot.closed = true;
    ctx.set_result("passed", Value(passed));
    ctx.emit("BallotExecuted",
             {{"ballot", Value(id)}, {"param", Value(ballot.param)}, {"passed", Value(passed)}});
}

nlohmann::ordered_json RideSharingContract::state_json() const {
    nlohmann::ordered_json j;
    j["ballots"] = nlohmann::ordered_json::array();
    for (const BallotState& b : ballots_) j["ballots"].push_back(b.to_json());
    j["current_fare"] = current_fare_;
    j["maintenance_fund"] = maintenance_fund_;
    j["owners"] = nlohmann::ordered_json::array();
    for (const Address& o : owners_) j["owners"].push_back(o.display());
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params_) params[k] = v;
    j["params"] = params;
    j["passenger"] = passenger_ ? nlohmann::ordered_json(passenger_->display())
                                : nlohmann::ordered_json(nullptr);
    if (pending_transfer_) {
        nlohmann::ordered_json pt;
        pt["from"] = pending_transfer_->first.display();
        pt["to"] = pending_transfer_->second.display();
        j["pending_transfer"] = pt;
    } else {
        j["pending_transfer"] = nullptr;
    }
    j["ride_cost"] = ride_cost_;
    j["vehicle"] = vehicle_.display();
    j["vin"] = to_hex(vin_);
    return j;
}

std::unique_ptr<ContractBase> RideSharingContract::clone() const {
    return std::make_unique<RideSharingContract>(*this);
}

} // namespace rbn
