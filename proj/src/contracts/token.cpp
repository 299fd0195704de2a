#include "rbn/contracts/token.hpp"

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"

namespace rbn {

Status TokenLedger::mint(const Address& to, std::uint64_t amount, const Address& caller) {
    if (caller != owner)
        return Status::err(Errc::Unauthorized, "only the token owner may mint");
    if (amount > UINT64_MAX - total_supply)
        return Status::err(Errc::StateError, "supply overflow");
    total_supply += amount;
    balances[to] += amount;
    return ok_status();
}

Status TokenLedger::transfer(const Address& from, const Address& to, std::uint64_t amount) {
    auto it = balances.find(from);
    std::uint64_t have = it == balances.end() ? 0 : it->second;
    if (have < amount)
        return Status::err(Errc::InsufficientTokenBalance,
                           "balance " + std::to_string(have) + ", needed " +
                               std::to_string(amount));
    it->second -= amount;
    if (it->second == 0) balances.erase(it);
    balances[to] += amount;
    return ok_status();
}

std::uint64_t TokenLedger::balance_of(const Address& addr) const {
    auto it = balances.find(addr);
    return it == balances.end() ? 0 : it->second;
}

nlohmann::ordered_json TokenLedger::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json bal = nlohmann::ordered_json::object();
    for (const auto& [addr, amount] : balances) bal[addr.display()] = amount;
    j["balances"] = bal;
    j["owner"] = owner.display();
    j["symbol"] = symbol;
    j["total_supply"] = total_supply;
    return j;
}

TokenContract::TokenContract(std::string symbol, Address owner) {
    ledger_.symbol = std::move(symbol);
    ledger_.owner = owner;
}

bool TokenContract::has_method(std::string_view method) const {
    return method == "mint" || method == "transfer";
}

void TokenContract::call(CallContext& ctx, std::string_view method,
                         const std::vector<Value>& args) {
    ctx.step();
    if (method == "mint") {
        cargs::expect_count(args, 2, Errc::StateError);
        Address to = cargs::addr(args, 0, "to", Errc::StateError);
        std::uint64_t amount = cargs::u64(args, 1, "amount", Errc::StateError);
        auto st = ledger_.mint(to, amount, ctx.caller());
        if (st.is_err()) contract_fail(st.error().code, st.error().message);
        ctx.emit("TokenTransfer", {{"amount", Value(amount)},
                                   {"from", Value(Address::zero().display())},
                                   {"to", Value(to.display())}});
    } else {
        cargs::expect_count(args, 2, Errc::StateError);
        Address to = cargs::addr(args, 0, "to", Errc::StateError);
        std::uint64_t amount = cargs::u64(args, 1, "amount", Errc::StateError);
        auto st = ledger_.transfer(ctx.caller(), to, amount);
        if (st.is_err()) contract_fail(st.error().code, st.error().message);
        ctx.emit("TokenTransfer", {{"amount", Value(amount)},
                                   {"from", Value(ctx.caller().display())},
                                   {"to", Value(to.display())}});
    }
}

nlohmann::ordered_json TokenContract::state_json() const { return ledger_.to_json(); }

std::unique_ptr<ContractBase> TokenContract::clone() const {
    return std::make_unique<TokenContract>(*this);
}

} // namespace rbn
