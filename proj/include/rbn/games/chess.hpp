#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rbn/result.hpp"

namespace rbn::chess {

/// Coordinate move: origin square, destination square, optional
/// promotion piece. Text form "e2e4", "e7e8q"; castling is the two-square
/// king move.
struct Move {
    int from = 0;
    int to = 0;
    char promo = 0; // 0 or 'q','r','b','n'

    bool operator==(const Move&) const = default;
};

Result<Move> parse_move(std::string_view text);
std::string format_move(const Move& m);

enum class Status { Ongoing, Checkmate, Stalemate };

/// Full legal-movement chess position: castling, en passant, promotion,
/// check/checkmate/stalemate. Repetition and fifty-move draws are out of
/// scope.
class Board {
  public:
    Board(); // standard initial position

    /// Accepts board/side/castling/ep FEN fields; move counters, when
    /// present, are ignored.
    static Result<Board> from_fen(std::string_view fen);

    /// Canonical four-field serialization, stable for hashing.
    std::string fen() const;

    bool white_to_move() const { return white_to_move_; }
    std::vector<Move> legal_moves() const;
    bool in_check() const; // side to move
    Status status() const;

    /// Validates against the current legal-move set, applies, and
    /// reports the resulting status; IllegalMove otherwise.
    Result<Status> play(const Move& m);
    bool is_legal(const Move& m) const;

    std::uint64_t perft(int depth) const;

    bool operator==(const Board&) const = default;

  private:
    struct RawTag {};
    explicit Board(RawTag) {}

    // 0 empty; 1..6 = P,N,B,R,Q,K; negative for black. a1 = 0, h8 = 63.
    std::array<std::int8_t, 64> sq_{};
    bool white_to_move_ = true;
    std::uint8_t castling_ = 0; // 1 = WK, 2 = WQ, 4 = BK, 8 = BQ
    int ep_ = -1;

    void generate_pseudo(std::vector<Move>& out) const;
    bool square_attacked(int target, bool by_white) const;
    void apply_unchecked(const Move& m);
    int king_square(bool white) const;
    bool leaves_own_king_in_check(const Move& m) const;
};

} // namespace rbn::chess
