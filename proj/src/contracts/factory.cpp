#include "rbn/contracts/arbitrated_escrow.hpp"
#include "rbn/contracts/game_betting.hpp"
#include "rbn/contracts/maintenance_escrow.hpp"
#include "rbn/contracts/ride_sharing.hpp"
#include "rbn/contracts/time_lock.hpp"
#include "rbn/contracts/token.hpp"
#include "rbn/contracts/unilateral_reward.hpp"
#include "rbn/engine.hpp"

#include "contracts/contract_args.hpp"

namespace rbn {

bool is_known_kind(std::string_view kind) {
    return kind == "token" || kind == "ride_sharing" || kind == "maintenance_escrow" ||
           kind == "unilateral_reward" || kind == "arbitrated_escrow" ||
           kind == "game_betting" || kind == "time_lock_commitment";
}

Result<std::unique_ptr<ContractBase>> make_contract(std::string_view kind,
                                                    const DeployContext& ctx,
                                                    const std::vector<Value>& args) {
    using R = Result<std::unique_ptr<ContractBase>>;
    if (kind == "token") {
        try {
            cargs::expect_count(args, 1, Errc::ConstructorError);
            const std::string& symbol = cargs::str(args, 0, "symbol", Errc::ConstructorError);
            contract_require(!symbol.empty(), Errc::ConstructorError, "symbol must be non-empty");
            contract_require(ctx.attached == 0, Errc::ConstructorError,
                             "token deployment is not payable");
            return R::ok(std::make_unique<TokenContract>(symbol, ctx.deployer));
        } catch (const ContractError& e) {
            return R::err(e.error().code, e.error().message);
        }
    }
    if (kind == "ride_sharing") return RideSharingContract::create(ctx, args);
    if (kind == "maintenance_escrow") return MaintenanceEscrowContract::create(ctx, args);
    if (kind == "unilateral_reward") return UnilateralRewardContract::create(ctx, args);
    if (kind == "arbitrated_escrow") return ArbitratedEscrowContract::create(ctx, args);
    if (kind == "game_betting") return GameBettingContract::create(ctx, args);
    if (kind == "time_lock_commitment") return TimeLockCommitmentContract::create(ctx, args);
    return R::err(Errc::ConstructorError, "unknown contract kind " + std::string(kind));
}

} // namespace rbn
