#pragma once

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// Buyer/seller escrow overseen by a third-party agent fixed at
/// creation. Exactly one payout or refund ever occurs; terminal phases
/// are absorbing. Disputes are open until dispute_deadline; past it,
/// funds unlock by timeout (refund from Funded or Disputed, payment
/// from Delivered).
///
/// Constructor args:
///   [buyer, seller, agent, price, dispute_deadline]
class ArbitratedEscrowContract final : public ContractBase {
  public:
    enum class Phase { Created, Funded, Delivered, Released, Disputed, ResolvedRefund, ResolvedPay };

    static Result<std::unique_ptr<ContractBase>> create(const DeployContext& ctx,
                                                        const std::vector<Value>& args);

    std::string_view kind() const override { return "arbitrated_escrow"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view method) const override { return method == "fund"; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

  private:
    Address buyer_;
    Address seller_;
    Address agent_;
    std::uint64_t price_ = 0;
    std::uint64_t dispute_deadline_ = 0;
    Phase phase_ = Phase::Created;
};

} // namespace rbn
