#include "rbn/contracts/time_lock.hpp"

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"

namespace rbn {

namespace {
const char* phase_name(TimeLockCommitmentContract::Phase p) {
    return p == TimeLockCommitmentContract::Phase::Active ? "Active" : "Expired";
}
} // namespace

Result<std::unique_ptr<ContractBase>>
TimeLockCommitmentContract::create(const DeployContext& ctx, const std::vector<Value>& args) {
    try {
        contract_require(args.size() == 7 || args.size() == 8, Errc::ConstructorError,
                         "need device, locked_resource, window_start, window_end, period, "
                         "penalty, duration [, beneficiary]");
        auto c = std::make_unique<TimeLockCommitmentContract>();
        c->human_ = ctx.deployer;
        c->device_ = cargs::addr(args, 0, "device", Errc::ConstructorError);
        c->locked_resource_ = cargs::str(args, 1, "locked_resource", Errc::ConstructorError);
        c->window_start_ = cargs::u64(args, 2, "window_start", Errc::ConstructorError);
        c->window_end_ = cargs::u64(args, 3, "window_end", Errc::ConstructorError);
        c->period_ = cargs::u64(args, 4, "period", Errc::ConstructorError);
        c->penalty_ = cargs::u64(args, 5, "penalty", Errc::ConstructorError);
        std::uint64_t duration = cargs::u64(args, 6, "duration", Errc::ConstructorError);
        c->beneficiary_ = args.size() == 8
                              ? cargs::addr(args, 7, "beneficiary", Errc::ConstructorError)
                              : c->device_;
        contract_require(c->device_ != c->human_, Errc::ConstructorError,
                         "device must differ from the committing human");
        contract_require(c->penalty_ > 0, Errc::ConstructorError, "penalty must be positive");
        contract_require(duration > 0, Errc::ConstructorError, "duration must be positive");
        contract_require(c->window_start_ <= c->window_end_, Errc::ConstructorError,
                         "window start must not exceed window end");
        if (c->period_ > 0)
            contract_require(c->window_end_ < c->period_, Errc::ConstructorError,
                             "recurring window must fit inside the period");
        contract_require(ctx.attached == c->penalty_, Errc::ConstructorError,
                         "the penalty must be escrowed at creation");
        c->escrow_ = ctx.attached;
        c->expiry_height_ = ctx.height + duration;
        return Result<std::unique_ptr<ContractBase>>::ok(std::move(c));
    } catch (const ContractError& e) {
        return Result<std::unique_ptr<ContractBase>>::err(e.error().code, e.error().message);
    }
}

bool TimeLockCommitmentContract::has_method(std::string_view m) const {
    return m == "request_access" || m == "expire";
}

bool TimeLockCommitmentContract::in_window(std::uint64_t height) const {
    if (period_ > 0) {
        std::uint64_t m = height % period_;
        return window_start_ <= m && m <= window_end_;
    }
    return window_start_ <= height && height <= window_end_;
}

void TimeLockCommitmentContract::call(CallContext& ctx, std::string_view method,
                                      const std::vector<Value>& args) {
    ctx.step();
    if (method == "request_access") {
        cargs::expect_count(args, 0, Errc::StateError);
        contract_require(ctx.caller() == device_, Errc::Unauthorized,
                         "only the device reports access attempts");
        bool lapsed = phase_ == Phase::Expired || ctx.height() > expiry_height_;
        if (!lapsed && in_window(ctx.height())) {
            std::uint64_t forfeited = 0;
            if (escrow_ >= penalty_) {
                escrow_ -= penalty_;
                forfeited = penalty_;
                ctx.pay(beneficiary_, penalty_);
            }
            ctx.set_result("allowed", Value(false));
            ctx.emit("AccessDenied",
                     {{"height", Value(ctx.height())}, {"penalty", Value(forfeited)}});
        } else {
            ctx.set_result("allowed", Value(true));
            ctx.emit("AccessAllowed", {{"height", Value(ctx.height())}});
        }
    } else if (method == "expire") {
        contract_require(phase_ == Phase::Active, Errc::StateError, "agreement already expired");
        contract_require(ctx.height() > expiry_height_, Errc::StateError,
                         "agreement still active until height " +
                             std::to_string(expiry_height_));
        phase_ = Phase::Expired;
        std::uint64_t refund = escrow_;
        escrow_ = 0;
        if (refund > 0) ctx.pay(human_, refund);
        ctx.emit("Expired", {{"refund", Value(refund)}});
    }
}

nlohmann::ordered_json TimeLockCommitmentContract::state_json() const {
    nlohmann::ordered_json j;
    j["beneficiary"] = beneficiary_.display();
    j["device"] = device_.display();
    j["escrow"] = escrow_;
    j["expiry_height"] = expiry_height_;
    j["human"] = human_.display();
    j["locked_resource"] = locked_resource_;
    j["penalty"] = penalty_;
    j["period"] = period_;
    j["phase"] = phase_name(phase_);
    j["window_end"] = window_end_;
    j["window_start"] = window_start_;
    return j;
}

std::unique_ptr<ContractBase> TimeLockCommitmentContract::clone() const {
    return std::make_unique<TimeLockCommitmentContract>(*this);
}

} // namespace rbn
