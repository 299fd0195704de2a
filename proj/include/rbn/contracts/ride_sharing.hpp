#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// One governance ballot over a named contract parameter. `executed`
/// is true only for ballots that passed; `closed` marks a ballot whose
/// execute() already ran (pass or fail).
struct BallotState {
    Address proposer;
    std::string param;
    std::uint64_t value = 0;
    std::map<Address, bool> votes;
    std::uint64_t deadline = 0;
    bool executed = false;
    bool closed = false;

    nlohmann::ordered_json to_json() const;
};

/// Fractionally owned autonomous-vehicle service. Ride fees accrue in
/// the contract; on ride completion the maintenance share (percent
/// params["maintenance_fund_rate"]) stays earmarked and the rest is
/// split equally among owners, remainder to the first owner. Owners
/// govern params["service_fee"] and params["maintenance_fund_rate"]
/// through strict-majority ballots.
///
/// Constructor args:
///   [vehicle, vin(32 bytes), service_fee, maintenance_fund_rate,
///    owner1, owner2, ...]
class RideSharingContract final : public ContractBase {
  public:
    static Result<std::unique_ptr<ContractBase>> create(const DeployContext& ctx,
                                                        const std::vector<Value>& args);

    std::string_view kind() const override { return "ride_sharing"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view method) const override { return method == "request_ride"; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

  private:
    bool is_owner(const Address& a) const;
    void require_owner(const Address& a) const;

    void set_owners(CallContext& ctx, const std::vector<Value>& args);
    void approve_transfer(CallContext& ctx, const std::vector<Value>& args);
    void accept_transfer(CallContext& ctx);
    void request_ride(CallContext& ctx);
    void complete_ride(CallContext& ctx);
    void withdraw_maintenance(CallContext& ctx, const std::vector<Value>& args);
    void propose(CallContext& ctx, const std::vector<Value>& args);
    void vote(CallContext& ctx, const std::vector<Value>& args);
    void execute(CallContext& ctx, const std::vector<Value>& args);

    Address vehicle_;
    Bytes vin_;
    std::vector<Address> owners_;
    std::optional<Address> passenger_;
    std::uint64_t ride_cost_ = 0; // fare of the ride in progress / last ride
    std::optional<std::pair<Address, Address>> pending_transfer_;
    std::map<std::string, std::uint64_t> params_;
    std::uint64_t current_fare_ = 0;
    std::uint64_t maintenance_fund_ = 0;
    std::vector<BallotState> ballots_;
};

} // namespace rbn
