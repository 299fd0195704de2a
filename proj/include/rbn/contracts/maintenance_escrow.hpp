#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// Service escrow between a vehicle and a provider, confirmed by an
/// oracle attestation. Phases advance along
/// Quoted -> Funded -> ProviderSignaled -> (Confirmed | Refunded);
/// funds leave only at Confirmed (to the provider) or Refunded (back to
/// the vehicle, after timeout_height).
///
/// Constructor args:
///   [vehicle, provider, quote, obligations, timeout_height, oracle]
/// confirm() takes the canonical bytes of an attestation whose subject
/// must be "service-ok:<vehicle>:<obligations>" with value true, signed
/// by the oracle address pinned here at creation.
class MaintenanceEscrowContract final : public ContractBase {
  public:
    enum class Phase { Quoted, Funded, ProviderSignaled, Confirmed, Refunded };

    static Result<std::unique_ptr<ContractBase>> create(const DeployContext& ctx,
                                                        const std::vector<Value>& args);

    std::string_view kind() const override { return "maintenance_escrow"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view method) const override { return method == "fund"; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

    static std::string expected_subject(const Address& vehicle, const std::string& obligations);

  private:
    Address vehicle_;
    Address provider_;
    std::uint64_t quote_ = 0;
    std::string obligations_;
    std::uint64_t timeout_height_ = 0;
    Address oracle_;
    Phase phase_ = Phase::Quoted;
};

} // namespace rbn
