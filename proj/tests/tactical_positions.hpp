#pragma once

// One-move wins: every piece is a king, the side to move can capture the
// lone enemy king and end the game at once. Captures are optional here so
// the agent also has quiet moves to choose from.

#include "checkmine/checkers.hpp"

#include <vector>

namespace testing {

struct TacticalPosition {
    checkmine::Color agent;
    std::vector<checkmine::Square> own;
    checkmine::Square enemy;
};

inline const std::vector<TacticalPosition>& tactical_positions()
{
    using checkmine::Color;
    static const std::vector<TacticalPosition> positions{
        {Color::Red, {{7, 7}, {7, 1}, {3, 1}}, {6, 6}},
        {Color::White, {{7, 5}, {2, 6}}, {6, 4}},
        {Color::Red, {{6, 4}, {2, 2}}, {5, 5}},
        {Color::White, {{5, 5}, {6, 2}}, {6, 6}},
        {Color::Red, {{1, 5}, {1, 1}, {0, 6}}, {2, 6}},
        {Color::White, {{2, 2}, {0, 2}}, {3, 1}},
        {Color::Red, {{5, 5}, {3, 1}, {7, 7}}, {4, 4}},
        {Color::White, {{2, 6}, {4, 2}}, {1, 5}},
        {Color::Red, {{5, 5}, {4, 0}, {5, 1}}, {6, 6}},
        {Color::White, {{7, 3}, {0, 2}}, {6, 4}},
        {Color::Red, {{3, 3}, {1, 5}}, {2, 2}},
        {Color::White, {{4, 0}, {0, 2}, {0, 0}}, {5, 1}},
        {Color::Red, {{2, 0}, {7, 5}}, {3, 1}},
        {Color::White, {{6, 2}, {1, 1}, {3, 1}}, {5, 1}},
        {Color::Red, {{3, 3}, {4, 6}, {0, 0}}, {4, 4}},
        {Color::White, {{1, 3}, {3, 7}, {1, 5}}, {2, 2}},
        {Color::Red, {{2, 4}, {7, 7}}, {1, 3}},
        {Color::White, {{5, 7}, {7, 1}}, {6, 6}},
        {Color::Red, {{3, 5}, {6, 0}}, {2, 4}},
        {Color::White, {{6, 2}, {3, 3}}, {5, 1}},
    };
    return positions;
}

inline checkmine::GameBoard board_of(const TacticalPosition& p)
{
    using namespace checkmine;
    GameBoard b(3);
    int id = 0;
    for (const Square s : p.own)
        b.place({p.agent, ++id, s, true});
    b.place({opponent(p.agent), 1, p.enemy, true});
    return b;
}

inline checkmine::RewardConfig tactical_rules()
{
    checkmine::RewardConfig r;
    r.forced_capture = false;
    return r;
}

} // namespace testing
