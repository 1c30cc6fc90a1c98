#include "checkmine/features.hpp"

#include "random_boards.hpp"
#include "random_logs.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>

using namespace checkmine;

TEST_CASE("abstract_move reproduces the worked example")
{
    const auto m = abstract_move({2, 4}, {1, 6});
    CHECK(m.horizontal == Horizontal::Left);
    CHECK(m.vertical == Vertical::Up);
    CHECK(to_string(Movement{m}) == "(left,up)");
}

TEST_CASE("abstract_move covers every displacement sign pattern")
{
    for (int dx = -7; dx <= 7; ++dx) {
        for (int dy = -7; dy <= 7; ++dy) {
            if (dx == 0 && dy == 0)
                continue;
            const Square from{dx < 0 ? 7 : 0, dy < 0 ? 7 : 0};
            const Square to{from.x + dx, from.y + dy};
            const auto m = abstract_move(from, to);
            CHECK(m.horizontal == (dx > 0 ? Horizontal::Right : dx < 0 ? Horizontal::Left : Horizontal::None));
            CHECK(m.vertical == (dy > 0 ? Vertical::Up : dy < 0 ? Vertical::Down : Vertical::None));
        }
    }
    CHECK_THROWS_AS(abstract_move({3, 3}, {3, 3}), std::invalid_argument);
}

TEST_CASE("movement tokens print and parse")
{
    CHECK(to_string(Movement{}) == "()");
    CHECK(to_string(Movement{DirectionMove{Horizontal::Right, Vertical::Down}}) == "(right,down)");
    CHECK(to_string(Movement{DirectionMove{Horizontal::None, Vertical::Up}}) == "(up)");
    CHECK(to_string(Movement{DirectionMove{Horizontal::Left, Vertical::None}}) == "(left)");
    CHECK(to_string(Movement{DistanceDelta{1}}) == "(d=+1)");
    CHECK(to_string(Movement{DistanceDelta{-2}}) == "(d=-2)");
    CHECK(to_string(Movement{DistanceDelta{0}}) == "(d=0)");
    CHECK(to_string(Movement{DistanceDelta{std::nullopt}}) == "(d=inf)");
    for (const char* text : {"()", "(right,up)", "(left,down)", "(up)", "(d=+3)", "(d=-1)", "(d=inf)"})
        CHECK(to_string(parse_movement(text)) == text);
    for (const char* bad : {"", "(", "(sideways)", "(right,right)", "(d=)", "(d=x)", "right,up"})
        CHECK_THROWS_AS(parse_movement(bad), std::invalid_argument);
}

TEST_CASE("transition labels follow the logged format")
{
    Transition t;
    t.context = {3, DirectionMove{Horizontal::Right, Vertical::Up}};
    t.action = {3, DirectionMove{Horizontal::Left, Vertical::Down}};
    t.reward = 14;
    CHECK(format_label(t) == R"x(((3,"(right,up)"),(3,"(left,down)"),14))x");

    StepRecord first;
    first.piece_id = 2;
    first.move = DirectionMove{Horizontal::Right, Vertical::Up};
    CHECK(format_label(transition_of(first)) == R"x(((-1,"()"),(2,"(right,up)"),0))x");
}

TEST_CASE("labels, contexts and actions round-trip")
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        const Transition t = testing::random_transition(rng);
        CHECK(parse_label(format_label(t)) == t);
        CHECK(parse_context(format_context(t.context)) == t.context);
        CHECK(parse_action(format_action(t.action)) == t.action);
    }
    CHECK(parse_context(R"x((3, "(right,up)"))x") == DecisionContext{3, DirectionMove{Horizontal::Right, Vertical::Up}});
    for (const char* bad : {"", "((1,\"()\"),(2,\"()\"))", "((1,\"()\"),(2,\"()\"),7", "((1,()),(2,\"()\"),7)",
                            "((1,\"()\"),(2,\"()\"),7)x"})
        CHECK_THROWS_AS(parse_label(bad), std::invalid_argument);
}

TEST_CASE("bfs distance equals the minimum Manhattan distance")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        const GameBoard b = testing::random_board(rng, 5, 5);
        int want = kUnreachable;
        for (const auto& w : b.pieces(Color::White))
            for (const auto& r : b.pieces(Color::Red))
                want = std::min(want, std::abs(w.pos.x - r.pos.x) + std::abs(w.pos.y - r.pos.y));
        CHECK(red_white_distance(b) == want);
    }
}

TEST_CASE("bfs distance is unreachable without sources or targets")
{
    GameBoard b(1);
    b.place({Color::Red, 1, {0, 0}, false});
    CHECK(red_white_distance(b) == kUnreachable);
    const std::vector<Square> none;
    const std::vector<Square> one{{0, 0}};
    CHECK(bfs_min_distance(b, none, one) == kUnreachable);
    CHECK(bfs_min_distance(b, one, one) == 0);
}
