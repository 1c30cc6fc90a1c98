#pragma once

#include "checkmine/checkers.hpp"

#include <random>

namespace testing {

// Exactly `red` red and `white` white pieces on distinct dark squares, some of
// them kings. Men never stand on their own crowning row.
inline checkmine::GameBoard random_endgame(std::mt19937_64& rng, int red, int white, double king_p = 0.3)
{
    using namespace checkmine;
    GameBoard b(12);
    std::uniform_int_distribution<int> coord(0, 7);
    std::bernoulli_distribution king(king_p);
    auto fill = [&](Color c, int n) {
        for (int id = 1; id <= n; ++id) {
            while (true) {
                const Square s{coord(rng), coord(rng)};
                if (!is_dark(s) || b.at(s))
                    continue;
                const bool k = king(rng);
                if (!k && s.y == (c == Color::Red ? 7 : 0))
                    continue;
                b.place({c, id, s, k});
                break;
            }
        }
    };
    fill(Color::Red, red);
    fill(Color::White, white);
    return b;
}

// 1..max_red red and 1..max_white white pieces.
inline checkmine::GameBoard random_board(std::mt19937_64& rng, int max_red, int max_white, double king_p = 0.3)
{
    const int red = std::uniform_int_distribution<int>(1, max_red)(rng);
    const int white = std::uniform_int_distribution<int>(1, max_white)(rng);
    return random_endgame(rng, red, white, king_p);
}

} // namespace testing
