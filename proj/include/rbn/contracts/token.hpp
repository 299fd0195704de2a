#pragma once

#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// Fungible-token book: symbol, minting owner, balances. The sum of
/// balances always equals total_supply.
struct TokenLedger {
    std::string symbol;
    Address owner;
    std::uint64_t total_supply = 0;
    std::map<Address, std::uint64_t> balances;

    Status mint(const Address& to, std::uint64_t amount, const Address& caller);
    Status transfer(const Address& from, const Address& to, std::uint64_t amount);
    std::uint64_t balance_of(const Address& addr) const;

    nlohmann::ordered_json to_json() const;
};

/// Contract kind "token". Constructor args: [symbol]; deployer becomes
/// the minting owner. Methods: mint(to, amount), transfer(to, amount).
class TokenContract final : public ContractBase {
  public:
    TokenContract(std::string symbol, Address owner);

    std::string_view kind() const override { return "token"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view) const override { return false; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

    const TokenLedger& ledger() const { return ledger_; }

  private:
    TokenLedger ledger_;
};

} // namespace rbn
