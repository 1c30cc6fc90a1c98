#pragma once

// Feature engineering: turns concrete moves into the abstract tokens that
// make up event-log transition labels.

#include "checkmine/checkers.hpp"

#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace checkmine {

enum class Horizontal : std::uint8_t { None, Right, Left };
enum class Vertical : std::uint8_t { None, Up, Down };

struct DirectionMove {
    Horizontal horizontal = Horizontal::None;
    Vertical vertical = Vertical::None;

    friend auto operator<=>(const DirectionMove&, const DirectionMove&) = default;
};

/// Sign of dx -> right/left, sign of dy -> up/down; a zero axis is omitted.
DirectionMove abstract_move(Square from, Square to);

/// Change of the red/white shortest distance caused by a move; nullopt when
/// the distance after the move is unbounded (one side has no pieces left).
struct DistanceDelta {
    std::optional<int> value;

    friend auto operator<=>(const DistanceDelta&, const DistanceDelta&) = default;
};

/// A movement token: empty (no previous enemy move), a direction, or a
/// distance delta when the BFS feature mode is enabled.
using Movement = std::variant<std::monostate, DirectionMove, DistanceDelta>;

/// "()", "(right,up)", "(up)", "(d=-1)", "(d=inf)".
std::string to_string(const Movement& m);
/// Inverse of to_string; throws std::invalid_argument on malformed text.
Movement parse_movement(std::string_view text);

struct StepRecord {
    int last_turn_enemy_piece_id = -1;
    Movement last_turn_enemy_movement{};
    int piece_id = 0;
    Movement move{};
    std::vector<int> captured;
    int reward = 0;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// "(last_id, last_move)" half of a transition.
struct DecisionContext {
    int last_id = -1;
    Movement last_move{};

    friend bool operator==(const DecisionContext&, const DecisionContext&) = default;
};

/// "(piece_id, move)" half of a transition.
struct Action {
    int piece_id = 0;
    Movement move{};

    friend bool operator==(const Action&, const Action&) = default;
};

/// The structured content of a transition label.
struct Transition {
    DecisionContext context;
    Action action;
    int reward = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

Transition transition_of(const StepRecord& step);

/// Canonical label, e.g. ((3,"(right,up)"),(3,"(left,down)"),14).
std::string format_label(const Transition& t);
Transition parse_label(std::string_view label);

std::string format_context(const DecisionContext& c);
DecisionContext parse_context(std::string_view text);
std::string format_action(const Action& a);
Action parse_action(std::string_view text);

constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Multi-source BFS over the 4-neighbourhood of the 8x8 grid (pieces are not
/// obstacles). Returns the level at which a target is first dequeued, or
/// kUnreachable.
int bfs_min_distance(const GameBoard& board, std::span<const Square> sources,
                     std::span<const Square> targets);

/// White-to-red shortest distance on a board.
int red_white_distance(const GameBoard& board);

} // namespace checkmine
