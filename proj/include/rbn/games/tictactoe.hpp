#pragma once

#include <string>

#include "rbn/result.hpp"

namespace rbn::tictactoe {

enum class Status { Ongoing, XWins, OWins, Draw };

/// 3x3 board, cells 0..8 row-major. X (first player) moves first. Moves
/// are the cell index in text form ("0".."8").
class Board {
  public:
    Board() : cells_(9, '.') {}

    static Result<Board> from_string(std::string_view s, bool x_to_move);

    bool x_to_move() const { return x_to_move_; }
    const std::string& cells() const { return cells_; }

    /// Applies a move for the side to move; IllegalMove when the cell is
    /// out of range or occupied.
    Result<Status> play(std::string_view cell_text);

    Status status() const;

  private:
    std::string cells_;
    bool x_to_move_ = true;
};

} // namespace rbn::tictactoe
