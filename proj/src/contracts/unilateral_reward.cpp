#include "rbn/contracts/unilateral_reward.hpp"

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"

namespace rbn {

namespace {
const char* phase_name(UnilateralRewardContract::Phase p) {
    using Phase = UnilateralRewardContract::Phase;
    switch (p) {
    case Phase::Open: return "Open";
    case Phase::Claimed: return "Claimed";
    case Phase::Paid: return "Paid";
    case Phase::Expired: return "Expired";
    }
    return "?";
}
} // namespace

Result<std::unique_ptr<ContractBase>>
UnilateralRewardContract::create(const DeployContext& ctx, const std::vector<Value>& args) {
    try {
        cargs::expect_count(args, 3, Errc::ConstructorError);
        auto c = std::make_unique<UnilateralRewardContract>();
        c->offeror_ = ctx.deployer;
        c->task_ = cargs::str(args, 0, "task", Errc::ConstructorError);
        c->deadline_ = cargs::u64(args, 1, "deadline", Errc::ConstructorError);
        c->reward_ = cargs::u64(args, 2, "reward", Errc::ConstructorError);
        contract_require(c->reward_ > 0, Errc::ConstructorError, "reward must be positive");
        contract_require(ctx.attached == c->reward_, Errc::ConstructorError,
                         "the full reward must be escrowed at creation");
        contract_require(c->deadline_ >= ctx.height, Errc::ConstructorError,
                         "deadline already passed");
        return Result<std::unique_ptr<ContractBase>>::ok(std::move(c));
    } catch (const ContractError& e) {
        return Result<std::unique_ptr<ContractBase>>::err(e.error().code, e.error().message);
    }
}

bool UnilateralRewardContract::has_method(std::string_view m) const {
    return m == "claim" || m == "confirm_and_pay" || m == "expire";
}

void UnilateralRewardContract::call(CallContext& ctx, std::string_view method,
                                    const std::vector<Value>& args) {
    ctx.step();
    if (method == "claim") {
        cargs::expect_count(args, 1, Errc::StateError);
        const std::string& evidence = cargs::str(args, 0, "evidence", Errc::StateError);
        contract_require(phase_ == Phase::Open, Errc::StateError, "offer is not open");
        contract_require(ctx.height() <= deadline_, Errc::Expired, "offer deadline passed");
        contract_require(ctx.caller() != offeror_, Errc::Unauthorized,
                         "offeror cannot claim its own reward");
        claimant_ = ctx.caller();
        evidence_ = evidence;
        phase_ = Phase::Claimed;
        ctx.emit("RewardClaimed", {{"claimant", Value(ctx.caller().display())}});
    } else if (method == "confirm_and_pay") {
        contract_require(ctx.caller() == offeror_, Errc::Unauthorized,
                         "only the offeror confirms completion");
        contract_require(phase_ == Phase::Claimed, Errc::StateError, "nothing to confirm");
        phase_ = Phase::Paid;
        ctx.pay(*claimant_, reward_);
        ctx.emit("RewardPaid", {{"amount", Value(reward_)},
                                {"claimant", Value(claimant_->display())}});
    } else if (method == "expire") {
        contract_require(phase_ == Phase::Open || phase_ == Phase::Claimed, Errc::StateError,
                         "offer already settled");
        contract_require(ctx.height() > deadline_, Errc::StateError, "deadline not reached");
        phase_ = Phase::Expired;
        ctx.pay(offeror_, reward_);
        ctx.emit("RewardExpired", {{"amount", Value(reward_)}});
    }
}

nlohmann::ordered_json UnilateralRewardContract::state_json() const {
    nlohmann::ordered_json j;
    j["claimant"] = claimant_ ? nlohmann::ordered_json(claimant_->display())
                              : nlohmann::ordered_json(nullptr);
    j["deadline"] = deadline_;
    j["evidence"] = evidence_;
    j["offeror"] = offeror_.display();
    j["phase"] = phase_name(phase_);
    j["reward"] = reward_;
    j["task"] = task_;
    return j;
}

std::unique_ptr<ContractBase> UnilateralRewardContract::clone() const {
    return std::make_unique<UnilateralRewardContract>(*this);
}

} // namespace rbn
