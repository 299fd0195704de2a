#include "rbn/games/chess.hpp"

#include <cctype>
#include <cstdlib>

namespace rbn::chess {

namespace {

constexpr std::int8_t P = 1, N = 2, B = 3, R = 4, Q = 5, K = 6;

constexpr std::uint8_t kCastleWK = 1, kCastleWQ = 2, kCastleBK = 4, kCastleBQ = 8;

constexpr int kKnightDeltas[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                     {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr int kKingDeltas[8][2] = {{0, 1},  {1, 1},  {1, 0},  {1, -1},
                                   {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
constexpr int kRookDirs[4][2] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
constexpr int kBishopDirs[4][2] = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};

int file_of(int s) { return s & 7; }
int rank_of(int s) { return s >> 3; }
int square_at(int file, int rank) { return rank * 8 + file; }
bool on_board(int file, int rank) { return file >= 0 && file < 8 && rank >= 0 && rank < 8; }

char piece_char(std::int8_t p) {
    static const char* names = ".PNBRQK";
    char c = names[std::abs(p)];
    return p < 0 ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
}

std::int8_t piece_from_char(char c) {
    std::int8_t sign = std::islower(static_cast<unsigned char>(c)) ? -1 : 1;
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'P': return static_cast<std::int8_t>(sign * P);
    case 'N': return static_cast<std::int8_t>(sign * N);
    case 'B': return static_cast<std::int8_t>(sign * B);
    case 'R': return static_cast<std::int8_t>(sign * R);
    case 'Q': return static_cast<std::int8_t>(sign * Q);
    case 'K': return static_cast<std::int8_t>(sign * K);
    }
    return 0;
}

} // namespace

Result<Move> parse_move(std::string_view text) {
    if (text.size() != 4 && text.size() != 5)
        return Result<Move>::err(Errc::IllegalMove, "move must be 4 or 5 chars, e.g. e2e4");
    auto sq = [](char f, char r) -> int {
        if (f < 'a' || f > 'h' || r < '1' || r > '8') return -1;
        return (r - '1') * 8 + (f - 'a');
    };
    Move m;
    m.from = sq(text[0], text[1]);
    m.to = sq(text[2], text[3]);
    if (m.from < 0 || m.to < 0)
        return Result<Move>::err(Errc::IllegalMove, "squares out of range");
    if (text.size() == 5) {
        char p = text[4];
        if (p != 'q' && p != 'r' && p != 'b' && p != 'n')
            return Result<Move>::err(Errc::IllegalMove, "promotion piece must be q, r, b or n");
        m.promo = p;
    }
    return m;
}

std::string format_move(const Move& m) {
    std::string s;
    s.push_back(static_cast<char>('a' + file_of(m.from)));
    s.push_back(static_cast<char>('1' + rank_of(m.from)));
    s.push_back(static_cast<char>('a' + file_of(m.to)));
    s.push_back(static_cast<char>('1' + rank_of(m.to)));
    if (m.promo != 0) s.push_back(m.promo);
    return s;
}

Board::Board() {
    auto b = from_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -");
    *this = b.value();
}

Result<Board> Board::from_fen(std::string_view fen) {
    Board b{RawTag{}};
    b.sq_.fill(0);
    b.castling_ = 0;
    b.ep_ = -1;
    std::size_t i = 0;
    int rank = 7, file = 0;
    for (; i < fen.size() && fen[i] != ' '; ++i) {
        char c = fen[i];
        if (c == '/') {
            --rank;
            file = 0;
            if (rank < 0) return Result<Board>::err(Errc::FormatError, "too many ranks");
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            file += c - '0';
        } else {
            std::int8_t p = piece_from_char(c);
            if (p == 0 || !on_board(file, rank))
                return Result<Board>::err(Errc::FormatError, "bad fen board");
            b.sq_[square_at(file, rank)] = p;
            ++file;
        }
    }
    if (i >= fen.size()) return Result<Board>::err(Errc::FormatError, "fen missing side");
    ++i;
    if (i >= fen.size() || (fen[i] != 'w' && fen[i] != 'b'))
        return Result<Board>::err(Errc::FormatError, "fen side must be w or b");
    b.white_to_move_ = fen[i] == 'w';
    i += 2;
    for (; i < fen.size() && fen[i] != ' '; ++i) {
        switch (fen[i]) {
        case 'K': b.castling_ |= kCastleWK; break;
        case 'Q': b.castling_ |= kCastleWQ; break;
        case 'k': b.castling_ |= kCastleBK; break;
        case 'q': b.castling_ |= kCastleBQ; break;
        case '-': break;
        default: return Result<Board>::err(Errc::FormatError, "bad castling field");
        }
    }
    if (i < fen.size()) ++i;
    if (i < fen.size() && fen[i] != '-') {
        if (i + 1 >= fen.size() || fen[i] < 'a' || fen[i] > 'h' || fen[i + 1] < '1' ||
            fen[i + 1] > '8')
            return Result<Board>::err(Errc::FormatError, "bad en-passant field");
        b.ep_ = square_at(fen[i] - 'a', fen[i + 1] - '1');
    }
    return b;
}

std::string Board::fen() const {
    std::string out;
    for (int rank = 7; rank >= 0; --rank) {
        int run = 0;
        for (int file = 0; file < 8; ++file) {
            std::int8_t p = sq_[square_at(file, rank)];
            if (p == 0) {
                ++run;
            } else {
                if (run > 0) out.push_back(static_cast<char>('0' + run));
                run = 0;
                out.push_back(piece_char(p));
            }
        }
        if (run > 0) out.push_back(static_cast<char>('0' + run));
        if (rank > 0) out.push_back('/');
    }
    out.push_back(' ');
    out.push_back(white_to_move_ ? 'w' : 'b');
    out.push_back(' ');
    if (castling_ == 0) {
        out.push_back('-');
    } else {
        if (castling_ & kCastleWK) out.push_back('K');
        if (castling_ & kCastleWQ) out.push_back('Q');
        if (castling_ & kCastleBK) out.push_back('k');
        if (castling_ & kCastleBQ) out.push_back('q');
    }
    out.push_back(' ');
    if (ep_ < 0) {
        out.push_back('-');
    } else {
        out.push_back(static_cast<char>('a' + file_of(ep_)));
        out.push_back(static_cast<char>('1' + rank_of(ep_)));
    }
    return out;
}

int Board::king_square(bool white) const {
    std::int8_t target = white ? K : static_cast<std::int8_t>(-K);
    for (int s = 0; s < 64; ++s)
        if (sq_[s] == target) return s;
    return -1;
}

bool Board::square_attacked(int target, bool by_white) const {
    int tf = file_of(target), tr = rank_of(target);
    std::int8_t sign = by_white ? 1 : -1;

    // pawns attack diagonally toward their advance direction
    int pawn_rank = tr - (by_white ? 1 : -1);
    for (int df : {-1, 1}) {
        if (on_board(tf + df, pawn_rank) && sq_[square_at(tf + df, pawn_rank)] == sign * P)
            return true;
    }
    for (const auto& d : kKnightDeltas) {
        if (on_board(tf + d[0], tr + d[1]) && sq_[square_at(tf + d[0], tr + d[1])] == sign * N)
            return true;
    }
    for (const auto& d : kKingDeltas) {
        if (on_board(tf + d[0], tr + d[1]) && sq_[square_at(tf + d[0], tr + d[1])] == sign * K)
            return true;
    }
    // sliding attackers: walk outward from the target square
    for (const auto& d : kRookDirs) {
        int f = tf + d[0], r = tr + d[1];
        while (on_board(f, r)) {
            std::int8_t p = sq_[square_at(f, r)];
            if (p != 0) {
                if (p == sign * R || p == sign * Q) return true;
                break;
            }
            f += d[0];
            r += d[1];
        }
    }
    for (const auto& d : kBishopDirs) {
        int f = tf + d[0], r = tr + d[1];
        while (on_board(f, r)) {
            std::int8_t p = sq_[square_at(f, r)];
            if (p != 0) {
                if (p == sign * B || p == sign * Q) return true;
                break;
            }
            f += d[0];
            r += d[1];
        }
    }
    return false;
}

void Board::generate_pseudo(std::vector<Move>& out) const {
    std::int8_t sign = white_to_move_ ? 1 : -1;
    for (int s = 0; s < 64; ++s) {
        std::int8_t piece = sq_[s];
        if (piece == 0 || (piece > 0) != white_to_move_) continue;
        int f = file_of(s), r = rank_of(s);
        std::int8_t type = static_cast<std::int8_t>(std::abs(piece));

        if (type == P) {
            int dir = white_to_move_ ? 1 : -1;
            int start_rank = white_to_move_ ? 1 : 6;
            int promo_rank = white_to_move_ ? 7 : 0;
            auto push_pawn_move = [&](int to) {
                if (rank_of(to) == promo_rank) {
                    for (char promo : {'q', 'r', 'b', 'n'}) out.push_back({s, to, promo});
                } else {
                    out.push_back({s, to, 0});
                }
            };
            if (on_board(f, r + dir) && sq_[square_at(f, r + dir)] == 0) {
                push_pawn_move(square_at(f, r + dir));
                if (r == start_rank && sq_[square_at(f, r + 2 * dir)] == 0)
                    out.push_back({s, square_at(f, r + 2 * dir), 0});
            }
            for (int df : {-1, 1}) {
                if (!on_board(f + df, r + dir)) continue;
                int to = square_at(f + df, r + dir);
                std::int8_t victim = sq_[to];
                if ((victim != 0 && (victim > 0) != white_to_move_) || to == ep_)
                    push_pawn_move(to);
            }
        } else if (type == N || type == K) {
            const auto& deltas = type == N ? kKnightDeltas : kKingDeltas;
            for (const auto& d : deltas) {
                if (!on_board(f + d[0], r + d[1])) continue;
                int to = square_at(f + d[0], r + d[1]);
                if (sq_[to] == 0 || (sq_[to] > 0) != white_to_move_) out.push_back({s, to, 0});
            }
        } else {
            bool rook_lines = type == R || type == Q;
            bool bishop_lines = type == B || type == Q;
            auto slide = [&](const int dirs[4][2]) {
                for (int i = 0; i < 4; ++i) {
                    int df = dirs[i][0], dr = dirs[i][1];
                    int nf = f + df, nr = r + dr;
                    while (on_board(nf, nr)) {
                        int to = square_at(nf, nr);
                        if (sq_[to] == 0) {
                            out.push_back({s, to, 0});
                        } else {
                            if ((sq_[to] > 0) != white_to_move_) out.push_back({s, to, 0});
                            break;
                        }
                        nf += df;
                        nr += dr;
                    }
                }
            };
            if (rook_lines) slide(kRookDirs);
            if (bishop_lines) slide(kBishopDirs);
        }
    }

    // castling
    int home = white_to_move_ ? square_at(4, 0) : square_at(4, 7);
    if (sq_[home] == sign * K && !square_attacked(home, !white_to_move_)) {
        bool can_k = castling_ & (white_to_move_ ? kCastleWK : kCastleBK);
        bool can_q = castling_ & (white_to_move_ ? kCastleWQ : kCastleBQ);
        if (can_k && sq_[home + 3] == sign * R && sq_[home + 1] == 0 && sq_[home + 2] == 0 &&
            !square_attacked(home + 1, !white_to_move_) &&
            !square_attacked(home + 2, !white_to_move_))
            out.push_back({home, home + 2, 0});
        if (can_q && sq_[home - 4] == sign * R && sq_[home - 1] == 0 && sq_[home - 2] == 0 &&
            sq_[home - 3] == 0 && !square_attacked(home - 1, !white_to_move_) &&
            !square_attacked(home - 2, !white_to_move_))
            out.push_back({home, home - 2, 0});
    }
}

void Board::apply_unchecked(const Move& m) {
    std::int8_t piece = sq_[m.from];
    std::int8_t type = static_cast<std::int8_t>(std::abs(piece));

    if (type == P && m.to == ep_ && sq_[m.to] == 0 && file_of(m.from) != file_of(m.to)) {
        int captured = m.to + (white_to_move_ ? -8 : 8);
        sq_[captured] = 0;
    }

    sq_[m.to] = piece;
    sq_[m.from] = 0;

    if (m.promo != 0) {
        std::int8_t promoted = piece_from_char(m.promo);
        sq_[m.to] = static_cast<std::int8_t>(piece > 0 ? std::abs(promoted) : -std::abs(promoted));
    }

    if (type == K && std::abs(file_of(m.to) - file_of(m.from)) == 2) {
        if (m.to > m.from) {
            sq_[m.to - 1] = sq_[m.to + 1];
            sq_[m.to + 1] = 0;
        } else {
            sq_[m.to + 1] = sq_[m.to - 2];
            sq_[m.to - 2] = 0;
        }
    }

    if (piece == K) castling_ &= static_cast<std::uint8_t>(~(kCastleWK | kCastleWQ));
    if (piece == -K) castling_ &= static_cast<std::uint8_t>(~(kCastleBK | kCastleBQ));
    for (int corner : {m.from, m.to}) {
        if (corner == 0) castling_ &= static_cast<std::uint8_t>(~kCastleWQ);
        if (corner == 7) castling_ &= static_cast<std::uint8_t>(~kCastleWK);
        if (corner == 56) castling_ &= static_cast<std::uint8_t>(~kCastleBQ);
        if (corner == 63) castling_ &= static_cast<std::uint8_t>(~kCastleBK);
    }

    ep_ = -1;
    if (type == P && std::abs(rank_of(m.to) - rank_of(m.from)) == 2) ep_ = (m.from + m.to) / 2;

    white_to_move_ = !white_to_move_;
}

bool Board::leaves_own_king_in_check(const Move& m) const {
    Board next = *this;
    next.apply_unchecked(m);
    int k = next.king_square(white_to_move_);
    return k < 0 || next.square_attacked(k, !white_to_move_);
}

std::vector<Move> Board::legal_moves() const {
    std::vector<Move> pseudo;
    pseudo.reserve(64);
    generate_pseudo(pseudo);
    std::vector<Move> out;
    out.reserve(pseudo.size());
    for (const Move& m : pseudo)
        if (!leaves_own_king_in_check(m)) out.push_back(m);
    return out;
}

bool Board::in_check() const {
    int k = king_square(white_to_move_);
    return k >= 0 && square_attacked(k, !white_to_move_);
}

Status Board::status() const {
    if (!legal_moves().empty()) return Status::Ongoing;
    return in_check() ? Status::Checkmate : Status::Stalemate;
}

bool Board::is_legal(const Move& m) const {
    for (const Move& lm : legal_moves())
        if (lm == m) return true;
    return false;
}

Result<Status> Board::play(const Move& m) {
    if (!is_legal(m))
        return Result<Status>::err(Errc::IllegalMove, "illegal move " + format_move(m));
    apply_unchecked(m);
    return status();
}

std::uint64_t Board::perft(int depth) const {
    if (depth == 0) return 1;
    std::uint64_t total = 0;
    for (const Move& m : legal_moves()) {
        if (depth == 1) {
            ++total;
        } else {
            Board next = *this;
            next.apply_unchecked(m);
            total += next.perft(depth - 1);
        }
    }
    return total;
}

} // namespace rbn::chess
