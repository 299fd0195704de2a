#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// Temporal commitment between a human (the deployer, who escrows the
/// penalty) and a device guarding a resource. The device reports access
/// attempts; attempts inside the forbidden window while the agreement is
/// active are denied and forfeit the penalty to the beneficiary. The
/// agreement lapses duration blocks after creation; expire() then
/// refunds whatever escrow remains to the human.
///
/// The window is inclusive on both ends. With period > 0 it recurs:
/// height h is forbidden iff start <= h % period <= end (requires
/// start <= end < period). With period == 0 it is the absolute range
/// [start, end].
///
/// Constructor args (payable, attached must equal penalty):
///   [device, locked_resource, window_start, window_end, period,
///    penalty, duration] or the same plus [beneficiary]
///   (beneficiary defaults to the device).
class TimeLockCommitmentContract final : public ContractBase {
  public:
    enum class Phase { Active, Expired };

    static Result<std::unique_ptr<ContractBase>> create(const DeployContext& ctx,
                                                        const std::vector<Value>& args);

    std::string_view kind() const override { return "time_lock_commitment"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view) const override { return false; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

  private:
    bool in_window(std::uint64_t height) const;

    Address human_;
    Address device_;
    Address beneficiary_;
    std::string locked_resource_;
    std::uint64_t window_start_ = 0;
    std::uint64_t window_end_ = 0;
    std::uint64_t period_ = 0;
    std::uint64_t penalty_ = 0;
    std::uint64_t expiry_height_ = 0;
    std::uint64_t escrow_ = 0;
    Phase phase_ = Phase::Active;
};

} // namespace rbn
