#include "rbn/contracts/arbitrated_escrow.hpp"

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"

namespace rbn {

namespace {
const char* phase_name(ArbitratedEscrowContract::Phase p) {
    using Phase = ArbitratedEscrowContract::Phase;
    switch (p) {
    case Phase::Created: return "Created";
    case Phase::Funded: return "Funded";
    case Phase::Delivered: return "Delivered";
    case Phase::Released: return "Released";
    case Phase::Disputed: return "Disputed";
    case Phase::ResolvedRefund: return "ResolvedRefund";
    case Phase::ResolvedPay: return "ResolvedPay";
    }
    return "?";
}
} // namespace

Result<std::unique_ptr<ContractBase>>
ArbitratedEscrowContract::create(const DeployContext& ctx, const std::vector<Value>& args) {
    try {
        cargs::expect_count(args, 5, Errc::ConstructorError);
        auto c = std::make_unique<ArbitratedEscrowContract>();
        c->buyer_ = cargs::addr(args, 0, "buyer", Errc::ConstructorError);
        c->seller_ = cargs::addr(args, 1, "seller", Errc::ConstructorError);
        c->agent_ = cargs::addr(args, 2, "agent", Errc::ConstructorError);
        c->price_ = cargs::u64(args, 3, "price", Errc::ConstructorError);
        c->dispute_deadline_ = cargs::u64(args, 4, "dispute_deadline", Errc::ConstructorError);
        contract_require(c->price_ > 0, Errc::ConstructorError, "price must be positive");
        contract_require(c->buyer_ != c->seller_, Errc::ConstructorError,
                         "buyer and seller must differ");
        contract_require(c->agent_ != c->buyer_ && c->agent_ != c->seller_,
                         Errc::ConstructorError, "agent must be a third party");
        contract_require(ctx.attached == 0, Errc::ConstructorError,
                         "escrow starts unfunded; the buyer calls fund()");
        return Result<std::unique_ptr<ContractBase>>::ok(std::move(c));
    } catch (const ContractError& e) {
        return Result<std::unique_ptr<ContractBase>>::err(e.error().code, e.error().message);
    }
}

bool ArbitratedEscrowContract::has_method(std::string_view m) const {
    return m == "fund" || m == "mark_delivered" || m == "release" || m == "dispute" ||
           m == "arbitrate" || m == "timeout_refund" || m == "timeout_release";
}

void ArbitratedEscrowContract::call(CallContext& ctx, std::string_view method,
                                    const std::vector<Value>& args) {
    ctx.step();
    if (method == "fund") {
        contract_require(ctx.caller() == buyer_, Errc::Unauthorized, "only the buyer funds");
        contract_require(phase_ == Phase::Created, Errc::StateError, "escrow already funded");
        contract_require(ctx.attached() == price_, Errc::WrongAmount,
                         "price is " + std::to_string(price_) + ", attached " +
                             std::to_string(ctx.attached()));
        phase_ = Phase::Funded;
        ctx.emit("EscrowFunded", {{"amount", Value(price_)}});
    } else if (method == "mark_delivered") {
        contract_require(ctx.caller() == seller_, Errc::Unauthorized,
                         "only the seller marks delivery");
        contract_require(phase_ == Phase::Funded, Errc::StateError, "escrow is not Funded");
        phase_ = Phase::Delivered;
        ctx.emit("Delivered", {});
    } else if (method == "release") {
        contract_require(ctx.caller() == buyer_, Errc::Unauthorized,
                         "only the buyer releases the funds");
        contract_require(phase_ == Phase::Funded || phase_ == Phase::Delivered, Errc::StateError,
                         "nothing to release");
        phase_ = Phase::Released;
        ctx.pay(seller_, price_);
        ctx.emit("Released", {{"amount", Value(price_)}, {"seller", Value(seller_.display())}});
    } else if (method == "dispute") {
        contract_require(ctx.caller() == buyer_ || ctx.caller() == seller_, Errc::Unauthorized,
                         "only buyer or seller may dispute");
        contract_require(phase_ == Phase::Funded || phase_ == Phase::Delivered, Errc::StateError,
                         "nothing to dispute");
        contract_require(ctx.height() <= dispute_deadline_, Errc::StateError,
                         "dispute window closed");
        phase_ = Phase::Disputed;
        ctx.emit("Disputed", {{"by", Value(ctx.caller().display())}});
    } else if (method == "arbitrate") {
        contract_require(ctx.caller() == agent_, Errc::Unauthorized,
                         "only the escrow agent arbitrates");
        contract_require(phase_ == Phase::Disputed, Errc::StateError, "no open dispute");
        cargs::expect_count(args, 1, Errc::StateError);
        const std::string& choice = cargs::str(args, 0, "choice", Errc::StateError);
        contract_require(choice == "refund" || choice == "pay", Errc::StateError,
                         "choice must be refund or pay");
        if (choice == "refund") {
            phase_ = Phase::ResolvedRefund;
            ctx.pay(buyer_, price_);
        } else {
            phase_ = Phase::ResolvedPay;
            ctx.pay(seller_, price_);
        }
        ctx.emit("Arbitrated", {{"choice", Value(choice)}});
    } else if (method == "timeout_refund") {
        contract_require(phase_ == Phase::Funded || phase_ == Phase::Disputed, Errc::StateError,
                         "timeout refund applies to Funded or Disputed");
        contract_require(ctx.height() > dispute_deadline_, Errc::StateError,
                         "dispute deadline not reached");
        phase_ = Phase::ResolvedRefund;
        ctx.pay(buyer_, price_);
        ctx.emit("TimeoutRefund", {{"amount", Value(price_)}});
    } else if (method == "timeout_release") {
        contract_require(phase_ == Phase::Delivered, Errc::StateError,
                         "timeout release applies to Delivered");
        contract_require(ctx.height() > dispute_deadline_, Errc::StateError,
                         "dispute deadline not reached");
        phase_ = Phase::ResolvedPay;
        ctx.pay(seller_, price_);
        ctx.emit("TimeoutRelease", {{"amount", Value(price_)}});
    }
}

nlohmann::ordered_json ArbitratedEscrowContract::state_json() const {
    nlohmann::ordered_json j;
    j["agent"] = agent_.display();
    j["buyer"] = buyer_.display();
    j["dispute_deadline"] = dispute_deadline_;
    j["phase"] = phase_name(phase_);
    j["price"] = price_;
    j["seller"] = seller_.display();
    return j;
}

std::unique_ptr<ContractBase> ArbitratedEscrowContract::clone() const {
    return std::make_unique<ArbitratedEscrowContract>(*this);
}

} // namespace rbn
