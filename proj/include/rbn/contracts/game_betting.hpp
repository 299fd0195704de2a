#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rbn/address.hpp"
#include "rbn/engine.hpp"

namespace rbn {

/// Winner-takes-pot board game between two staked players. The deployer
/// stakes at creation and plays first (white / X); the second player
/// joins with an equal stake. Moves are validated on-chain under the
/// chosen rules ("chess" or "tictactoe"); a terminal position settles
/// automatically. settle() additionally covers resignation, abandonment
/// (opponent silent past move_timeout blocks) and cancelling an unjoined
/// game.
///
/// Constructor args (payable, attached must equal stake):
///   [rules, stake] or [rules, stake, move_timeout]
class GameBettingContract final : public ContractBase {
  public:
    enum class Phase { AwaitingPlayers, InPlay, Settled, Drawn };

    static Result<std::unique_ptr<ContractBase>> create(const DeployContext& ctx,
                                                        const std::vector<Value>& args);

    std::string_view kind() const override { return "game_betting"; }
    bool has_method(std::string_view method) const override;
    bool payable(std::string_view method) const override { return method == "join"; }
    void call(CallContext& ctx, std::string_view method,
              const std::vector<Value>& args) override;
    nlohmann::ordered_json state_json() const override;
    std::unique_ptr<ContractBase> clone() const override;

  private:
    void join(CallContext& ctx);
    void move(CallContext& ctx, const std::vector<Value>& args);
    void settle(CallContext& ctx);
    void settle_win(CallContext& ctx, int winner_index);
    void settle_draw(CallContext& ctx);
    int player_index(const Address& a) const; // -1 when not a player

    std::string rules_;
    std::uint64_t stake_ = 0;
    std::uint64_t move_timeout_ = 0;
    Address players_[2];
    bool joined_ = false;
    std::string board_;
    int turn_ = 0;
    Phase phase_ = Phase::AwaitingPlayers;
    std::uint64_t pot_ = 0;
    std::uint64_t last_move_height_ = 0;
    std::optional<Address> winner_;
};

} // namespace rbn
