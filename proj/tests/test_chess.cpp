#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rbn/games/chess.hpp"
#include "rbn/games/tictactoe.hpp"
#include "support/chess_reference.hpp"

using namespace rbn;

namespace {

std::set<std::string> ref_move_set(const chessref::Pos& p) {
    std::set<std::string> out;
    for (const auto& m : chessref::legal_moves(p)) out.insert(chessref::move_str(m));
    return out;
}

std::set<std::string> prod_move_set(const chess::Board& b) {
    std::set<std::string> out;
    for (const auto& m : b.legal_moves()) out.insert(chess::format_move(m));
    return out;
}

} // namespace

TEST_SUITE("chess reference enumerator") {

    TEST_CASE("reference perft from the initial position") {
        // the enumerator is the oracle: these counts anchor everything else
        chessref::Pos p = chessref::initial_position();
        CHECK(chessref::perft(p, 1) == 20);
        CHECK(chessref::perft(p, 2) == 400);
        CHECK(chessref::perft(p, 3) == 8902);
    }

    TEST_CASE("reference handles en passant, castling and promotion") {
        // after 1.e4 c5 2.e5 d5 white may capture d5 en passant
        auto p = chessref::from_fen("rnbqkbnr/pp2pppp/8/2pPp3/8/8/PPP1PPPP/RNBQKBNR w KQkq e6");
        auto moves = ref_move_set(p);
        CHECK(moves.contains("d5e6"));

        auto castle = chessref::from_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq -");
        auto cm = ref_move_set(castle);
        CHECK(cm.contains("e1g1"));
        CHECK(cm.contains("e1c1"));

        auto promo = chessref::from_fen("8/P6k/8/8/8/8/8/K7 w - -");
        auto pm = ref_move_set(promo);
        CHECK(pm.contains("a7a8q"));
        CHECK(pm.contains("a7a8n"));
        CHECK(pm.size() == 4 + 3); // four promotions plus three king moves
    }
}

TEST_SUITE("chess validator vs reference") {

    TEST_CASE("perft equivalence from the initial position") {
        chess::Board b;
        chessref::Pos p = chessref::initial_position();
        for (int depth = 1; depth <= 3; ++depth)
            CHECK(b.perft(depth) == chessref::perft(p, depth));
        CHECK(b.perft(1) == 20);
        CHECK(b.perft(2) == 400);
        CHECK(b.perft(3) == 8902);
    }

    TEST_CASE("perft equivalence on crafted positions") {
        // positions exercising castling through attacks, pins, en
        // passant and promotion
        const char* fens[] = {
            "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq -",
            "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - -",
            "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq -",
            "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ -",
        };
        for (const char* fen : fens) {
            auto b = chess::Board::from_fen(fen);
            REQUIRE(b.is_ok());
            chessref::Pos p = chessref::from_fen(fen);
            CHECK(b.value().perft(1) == chessref::perft(p, 1));
            CHECK(b.value().perft(2) == chessref::perft(p, 2));
        }
    }

    TEST_CASE("move sets agree along random games") {
        std::mt19937_64 rng(2024);
        for (int game = 0; game < 30; ++game) {
            chess::Board b;
            for (int ply = 0; ply < 80; ++ply) {
                chessref::Pos p = chessref::from_fen(b.fen());
                auto expect = ref_move_set(p);
                auto got = prod_move_set(b);
                REQUIRE(got == expect);
                if (expect.empty()) break;
                auto it = expect.begin();
                std::advance(it, rng() % expect.size());
                auto mv = chess::parse_move(*it);
                REQUIRE(b.play(mv.value()).is_ok());
            }
        }
    }

    TEST_CASE("illegal moves are rejected with a reason") {
        chess::Board b;
        auto bad = b.play(chess::parse_move("a2a5").value());
        REQUIRE(bad.is_err());
        CHECK(bad.error().code == Errc::IllegalMove);
        CHECK(b.play(chess::parse_move("e2e4").value()).is_ok());
        // moving white twice
        auto wrong_side = b.play(chess::parse_move("d2d4").value());
        CHECK(wrong_side.is_err());
    }

    TEST_CASE("the four-move mate is checkmate, verified against the reference") {
        const char* line[] = {"e2e4", "e7e5", "f1c4", "b8c6", "d1h5", "g8f6", "h5f7"};
        chess::Board b;
        chess::Status final_status = chess::Status::Ongoing;
        for (const char* mv : line) {
            // the reference enumerator must agree the move is legal
            chessref::Pos p = chessref::from_fen(b.fen());
            CHECK(ref_move_set(p).contains(mv));
            auto st = b.play(chess::parse_move(mv).value());
            REQUIRE(st.is_ok());
            final_status = st.value();
        }
        CHECK(final_status == chess::Status::Checkmate);
        // reference agrees: black has no legal replies and is in check
        chessref::Pos p = chessref::from_fen(b.fen());
        CHECK(chessref::legal_moves(p).empty());
        CHECK(chessref::in_check(p, false));
    }

    TEST_CASE("stalemate is detected") {
        auto b = chess::Board::from_fen("7k/5Q2/6K1/8/8/8/8/8 b - -");
        REQUIRE(b.is_ok());
        CHECK(b.value().status() == chess::Status::Stalemate);
        chessref::Pos p = chessref::from_fen("7k/5Q2/6K1/8/8/8/8/8 b - -");
        CHECK(chessref::legal_moves(p).empty());
        CHECK_FALSE(chessref::in_check(p, false));
    }

    TEST_CASE("canonical serialization round-trips") {
        chess::Board b;
        REQUIRE(b.play(chess::parse_move("e2e4").value()).is_ok());
        std::string fen = b.fen();
        auto back = chess::Board::from_fen(fen);
        REQUIRE(back.is_ok());
        CHECK(back.value().fen() == fen);
        CHECK(back.value() == b);
        CHECK(fen == "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3");
    }
}

TEST_SUITE("tictactoe") {

    TEST_CASE("x wins on the diagonal") {
        tictactoe::Board b;
        const char* moves[] = {"0", "1", "4", "2", "8"};
        tictactoe::Status st = tictactoe::Status::Ongoing;
        for (const char* m : moves) st = b.play(m).value();
        CHECK(st == tictactoe::Status::XWins);
        auto after = b.play("3");
        REQUIRE(after.is_err());
        CHECK(after.error().code == Errc::StateError);
    }

    TEST_CASE("occupied cell and out-of-range moves are illegal") {
        tictactoe::Board b;
        REQUIRE(b.play("4").is_ok());
        auto taken = b.play("4");
        REQUIRE(taken.is_err());
        CHECK(taken.error().code == Errc::IllegalMove);
        CHECK(b.play("9").is_err());
        CHECK(b.play("e4").is_err());
    }

    TEST_CASE("full board with no line is a draw") {
        tictactoe::Board b;
        for (const char* m : {"0", "1", "2", "4", "7", "3", "5", "8", "6"})
            REQUIRE(b.play(m).is_ok());
        CHECK(b.status() == tictactoe::Status::Draw);
    }
}
