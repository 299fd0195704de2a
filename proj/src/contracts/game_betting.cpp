#include "rbn/contracts/game_betting.hpp"

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"
#include "rbn/games/chess.hpp"
#include "rbn/games/tictactoe.hpp"

namespace rbn {

namespace {
constexpr std::uint64_t kDefaultMoveTimeout = 100;

const char* phase_name(GameBettingContract::Phase p) {
    using Phase = GameBettingContract::Phase;
    switch (p) {
    case Phase::AwaitingPlayers: return "AwaitingPlayers";
    case Phase::InPlay: return "InPlay";
    case Phase::Settled: return "Settled";
    case Phase::Drawn: return "Drawn";
    }
    return "?";
}

// tictactoe boards serialize as "<9 cells>"; turn parity tracks X.
std::string initial_board(const std::string& rules) {
    if (rules == "chess") return chess::Board().fen();
    return ".........";
}
} // namespace

Result<std::unique_ptr<ContractBase>>
GameBettingContract::create(const DeployContext& ctx, const std::vector<Value>& args) {
    try {
        contract_require(args.size() == 2 || args.size() == 3, Errc::ConstructorError,
                         "need rules, stake [, move_timeout]");
        auto c = std::make_unique<GameBettingContract>();
        c->rules_ = cargs::str(args, 0, "rules", Errc::ConstructorError);
        contract_require(c->rules_ == "chess" || c->rules_ == "tictactoe",
                         Errc::ConstructorError, "rules must be chess or tictactoe");
        c->stake_ = cargs::u64(args, 1, "stake", Errc::ConstructorError);
        contract_require(c->stake_ > 0, Errc::ConstructorError, "stake must be positive");
        c->move_timeout_ = args.size() == 3
                               ? cargs::u64(args, 2, "move_timeout", Errc::ConstructorError)
                               : kDefaultMoveTimeout;
        contract_require(c->move_timeout_ > 0, Errc::ConstructorError,
                         "move_timeout must be positive");
        contract_require(ctx.attached == c->stake_, Errc::ConstructorError,
                         "creator must attach exactly the stake");
        c->players_[0] = ctx.deployer;
        c->pot_ = ctx.attached;
        c->board_ = initial_board(c->rules_);
        return Result<std::unique_ptr<ContractBase>>::ok(std::move(c));
    } catch (const ContractError& e) {
        return Result<std::unique_ptr<ContractBase>>::err(e.error().code, e.error().message);
    }
}

bool GameBettingContract::has_method(std::string_view m) const {
    return m == "join" || m == "move" || m == "settle";
}

int GameBettingContract::player_index(const Address& a) const {
    if (a == players_[0]) return 0;
    if (joined_ && a == players_[1]) return 1;
    return -1;
}

void GameBettingContract::call(CallContext& ctx, std::string_view method,
                               const std::vector<Value>& args) {
    ctx.step();
    if (method == "join") {
        join(ctx);
    } else if (method == "move") {
        move(ctx, args);
    } else {
        settle(ctx);
    }
}

void GameBettingContract::join(CallContext& ctx) {
    contract_require(phase_ == Phase::AwaitingPlayers, Errc::StateError,
                     "game is not open for joining");
    contract_require(ctx.caller() != players_[0], Errc::StateError,
                     "creator cannot join their own game");
    contract_require(ctx.attached() == stake_, Errc::WrongStake,
                     "stake is " + std::to_string(stake_) + ", attached " +
                         std::to_string(ctx.attached()));
    players_[1] = ctx.caller();
    joined_ = true;
    pot_ += ctx.attached();
    phase_ = Phase::InPlay;
    turn_ = 0;
    last_move_height_ = ctx.height();
    ctx.emit("GameStarted", {{"player0", Value(players_[0].display())},
                             {"player1", Value(players_[1].display())},
                             {"pot", Value(pot_)}});
}

void GameBettingContract::move(CallContext& ctx, const std::vector<Value>& args) {
    contract_require(phase_ == Phase::InPlay, Errc::StateError, "game is not in play");
    int idx = player_index(ctx.caller());
    contract_require(idx >= 0, Errc::Unauthorized, "caller is not a player");
    contract_require(idx == turn_, Errc::NotYourTurn, "not this player's turn");
    cargs::expect_count(args, 1, Errc::StateError);
    const std::string& text = cargs::str(args, 0, "move", Errc::StateError);
    ctx.step(256); // move validation budget

    if (rules_ == "chess") {
        auto board = chess::Board::from_fen(board_);
        contract_require(board.is_ok(), Errc::StateError, "stored board is corrupt");
        auto mv = chess::parse_move(text);
        if (mv.is_err()) contract_fail(Errc::IllegalMove, mv.error().message);
        auto status = board.value().play(mv.value());
        if (status.is_err()) contract_fail(Errc::IllegalMove, status.error().message);
        board_ = board.value().fen();
        last_move_height_ = ctx.height();
        ctx.emit("MovePlayed", {{"by", Value(ctx.caller().display())}, {"move", Value(text)}});
        switch (status.value()) {
        case chess::Status::Checkmate: settle_win(ctx, idx); return;
        case chess::Status::Stalemate: settle_draw(ctx); return;
        case chess::Status::Ongoing: break;
        }
    } else {
        auto board = tictactoe::Board::from_string(board_, turn_ == 0);
        contract_require(board.is_ok(), Errc::StateError, "stored board is corrupt");
        auto status = board.value().play(text);
        if (status.is_err()) contract_fail(status.error().code, status.error().message);
        board_ = board.value().cells();
        last_move_height_ = ctx.height();
        ctx.emit("MovePlayed", {{"by", Value(ctx.caller().display())}, {"move", Value(text)}});
        switch (status.value()) {
        case tictactoe::Status::XWins: settle_win(ctx, 0); return;
        case tictactoe::Status::OWins: settle_win(ctx, 1); return;
        case tictactoe::Status::Draw: settle_draw(ctx); return;
        case tictactoe::Status::Ongoing: break;
        }
    }
    turn_ = 1 - turn_;
}

void GameBettingContract::settle(CallContext& ctx) {
    if (phase_ == Phase::AwaitingPlayers) {
        contract_require(ctx.caller() == players_[0], Errc::Unauthorized,
                         "only the creator cancels an unjoined game");
        phase_ = Phase::Settled;
        std::uint64_t refund = pot_;
        pot_ = 0;
        ctx.pay(players_[0], refund);
        ctx.emit("GameCancelled", {{"refund", Value(refund)}});
        return;
    }
    contract_require(phase_ == Phase::InPlay, Errc::StateError, "game already settled");
    int idx = player_index(ctx.caller());
    contract_require(idx >= 0, Errc::Unauthorized, "caller is not a player");
    if (idx == turn_) {
        // resignation by the player on turn
        settle_win(ctx, 1 - idx);
    } else {
        contract_require(ctx.height() > last_move_height_ + move_timeout_, Errc::StateError,
                         "opponent still has time to move");
        settle_win(ctx, idx);
    }
}

void GameBettingContract::settle_win(CallContext& ctx, int winner_index) {
    phase_ = Phase::Settled;
    winner_ = players_[winner_index];
    std::uint64_t amount = pot_;
    pot_ = 0;
    ctx.pay(*winner_, amount);
    ctx.emit("GameSettled", {{"pot", Value(amount)}, {"winner", Value(winner_->display())}});
}

void GameBettingContract::settle_draw(CallContext& ctx) {
    phase_ = Phase::Drawn;
    std::uint64_t half = pot_ / 2;
    std::uint64_t odd = pot_ % 2; // odd unit to the first player
    pot_ = 0;
    ctx.pay(players_[0], half + odd);
    ctx.pay(players_[1], half);
    ctx.emit("GameDrawn", {{"pot", Value(half * 2 + odd)}});
}

nlohmann::ordered_json GameBettingContract::state_json() const {
    nlohmann::ordered_json j;
    j["board"] = board_;
    j["last_move_height"] = last_move_height_;
    j["move_timeout"] = move_timeout_;
    j["phase"] = phase_name(phase_);
    j["players"] = nlohmann::ordered_json::array();
    j["players"].push_back(players_[0].display());
    if (joined_) j["players"].push_back(players_[1].display());
    j["pot"] = pot_;
    j["rules"] = rules_;
    j["stake"] = stake_;
    j["turn"] = turn_;
    j["winner"] = winner_ ? nlohmann::ordered_json(winner_->display())
                          : nlohmann::ordered_json(nullptr);
    return j;
}

std::unique_ptr<ContractBase> GameBettingContract::clone() const {
    return std::make_unique<GameBettingContract>(*this);
}

} // namespace rbn
