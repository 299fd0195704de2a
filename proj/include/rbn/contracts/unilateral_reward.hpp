#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// One-sided reward offer: the deployer escrows the full reward at
/// creation; whoever fulfils the task claims, the offeror confirms and
/// the claimant is paid exactly once. Unclaimed or unconfirmed offers
/// expire after the deadline and refund the offeror.
///
/// Constructor args (payable, attached must equal reward):
///   [task_descriptor, deadline_height, reward]
class UnilateralRewardContract final : public ContractBase {
  public:
    enum class Phase { Open, Claimed, Paid, Expired };

    static Result<std::unique_ptr<ContractBase>> create(const DeployContext& ctx,
                                                        const std::vector<Value>& args);

    std::string_view kind() const override { return "unilateral_reward"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view) const override { return false; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

  private:
    Address offeror_;
    std::string task_;
    std::uint64_t deadline_ = 0;
    std::uint64_t reward_ = 0;
    std::optional<Address> claimant_;
    std::string evidence_;
    Phase phase_ = Phase::Open;
};

} // namespace rbn
