#include "rbn/games/tictactoe.hpp"

#include <algorithm>

namespace rbn::tictactoe {

namespace {
constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
}

Result<Board> Board::from_string(std::string_view s, bool x_to_move) {
    if (s.size() != 9 || s.find_first_not_of(".XO") != std::string_view::npos)
        return Result<Board>::err(Errc::FormatError, "board must be 9 chars of . X O");
    Board b;
    b.cells_.assign(s.begin(), s.end());
    b.x_to_move_ = x_to_move;
    return b;
}

Result<Status> Board::play(std::string_view cell_text) {
    if (status() != Status::Ongoing)
        return Result<Status>::err(Errc::StateError, "game already finished");
    if (cell_text.size() != 1 || cell_text[0] < '0' || cell_text[0] > '8')
        return Result<Status>::err(Errc::IllegalMove, "move must be a cell index 0-8");
    int cell = cell_text[0] - '0';
    if (cells_[cell] != '.')
        return Result<Status>::err(Errc::IllegalMove, "cell already taken");
    cells_[cell] = x_to_move_ ? 'X' : 'O';
    x_to_move_ = !x_to_move_;
    return status();
}

Status Board::status() const {
    for (const auto& line : kLines) {
        char a = cells_[line[0]];
        if (a != '.' && a == cells_[line[1]] && a == cells_[line[2]])
            return a == 'X' ? Status::XWins : Status::OWins;
    }
    if (cells_.find('.') == std::string::npos) return Status::Draw;
    return Status::Ongoing;
}

} // namespace rbn::tictactoe
