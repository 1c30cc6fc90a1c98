#pragma once

// N-vs-N checkers on the dark squares of an 8x8 board.
//
// Coordinates: x is the left/right axis (right = increasing x), y is the
// up/down axis (up = increasing y). Dark squares satisfy (x + y) even.
// RED starts on the y = 0 edge and moves up; WHITE starts on the y = 7 edge
// and moves down. Kings move and jump in all four diagonal directions.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace checkmine {

enum class Color : std::uint8_t { Red, White };

constexpr Color opponent(Color c) noexcept
{
    return c == Color::Red ? Color::White : Color::Red;
}

std::string to_string(Color c);

struct Square {
    int x = 0;
    int y = 0;

    friend bool operator==(const Square&, const Square&) = default;
    friend auto operator<=>(const Square&, const Square&) = default;
};

constexpr bool on_board(Square s) noexcept
{
    return s.x >= 0 && s.x < 8 && s.y >= 0 && s.y < 8;
}

constexpr bool is_dark(Square s) noexcept { return ((s.x + s.y) & 1) == 0; }

struct GamePiece {
    Color color = Color::Red;
    int id = 0;
    Square pos;
    bool king = false;

    friend bool operator==(const GamePiece&, const GamePiece&) = default;
};

struct RewardConfig {
    int capture_points = 7;
    int crown_points = 7;
    bool forced_capture = true;
};

struct ConcreteMove {
    int piece_id = 0;
    Square from;
    Square to;
    std::vector<int> captured_ids;
    bool crowned = false;
    int reward = 0;

    bool is_capture() const noexcept { return !captured_ids.empty(); }

    friend bool operator==(const ConcreteMove&, const ConcreteMove&) = default;
};

/// Thrown when a move is applied that is not legal in the given position.
class RuleViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GameBoard {
public:
    explicit GameBoard(int pieces_per_side = 3);

    int pieces_per_side() const noexcept { return pieces_per_side_; }

    const std::optional<GamePiece>& at(Square s) const { return cells_[index(s)]; }

    /// Places a piece; throws std::invalid_argument if the square is light,
    /// occupied, off-board, or the (color, id) pair is already present.
    void place(const GamePiece& piece);
    void remove(Square s);

    /// Pieces of one color in ascending id order.
    std::vector<GamePiece> pieces(Color c) const;
    std::optional<GamePiece> find(Color c, int id) const;

    int count(Color c) const noexcept;
    int kings(Color c) const noexcept;

    friend bool operator==(const GameBoard&, const GameBoard&) = default;

private:
    static std::size_t index(Square s);

    std::array<std::optional<GamePiece>, 64> cells_{};
    int pieces_per_side_ = 3;
};

/// Mirrored opening: each side fills the first `pieces_per_side` dark squares
/// of its back rows, row by row from its own edge. Ids run 1..N in fill order.
GameBoard initial_board(int pieces_per_side = 3);

/// All legal moves for `color`, ordered by piece id, then by generation order
/// (forward-left, forward-right, backward-left, backward-right for steps;
/// depth-first chain expansion for jumps). Multi-jumps are expanded to their
/// maximal continuation; a man that reaches the far row during a jump stops.
std::vector<ConcreteMove> legal_moves(const GameBoard& board, Color color,
                                      const RewardConfig& cfg = {});

/// Validates `move` against legal_moves for the mover and returns the new board.
GameBoard apply_move(const GameBoard& board, const ConcreteMove& move,
                     const RewardConfig& cfg = {});

/// Same as apply_move without the legality check. The caller guarantees the
/// move came from legal_moves on this board.
GameBoard apply_legal_move(const GameBoard& board, const ConcreteMove& move);

/// The opponent of `to_move` when `to_move` has no pieces or no legal move.
std::optional<Color> winner(const GameBoard& board, Color to_move);

/// (own - enemy) + king_weight * (own_kings - enemy_kings).
double evaluate(const GameBoard& board, Color perspective, double king_weight = 0.5);

std::string render(const GameBoard& board);

} // namespace checkmine
