#pragma once

#include "checkmine/checkers.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace checkmine {

/// Reward vectors are indexed [white, red].
using RewardVector = std::array<double, 2>;

constexpr std::size_t turn_index(Color c) noexcept { return c == Color::White ? 0 : 1; }

struct SearchConfig {
    int iterations = 100;
    int simulation_depth = 30;
    /// 0 switches the rollout policy to uniformly random moves.
    int minimax_depth = 3;
    double exploration_constant = 1.0 / std::sqrt(2.0);
    double discount = 0.8;
    bool pruning_enabled = false;
    std::uint64_t rng_seed = 0;
    RewardConfig rewards{};
    double king_weight = 0.5;
};

/// Throws std::invalid_argument when a field is outside its domain.
void validate(const SearchConfig& cfg);

class SearchNode {
public:
    struct Edge {
        ConcreteMove move;
        std::unique_ptr<SearchNode> node;
    };

    SearchNode(GameBoard board, Color turn, SearchNode* parent = nullptr);

    const GameBoard& board() const noexcept { return board_; }
    Color turn() const noexcept { return turn_; }
    bool terminate() const noexcept { return terminate_; }
    SearchNode* parent() const noexcept { return parent_; }

    const std::vector<Edge>& children() const noexcept { return children_; }
    SearchNode& child(std::size_t i) { return *children_.at(i).node; }
    const SearchNode& child(std::size_t i) const { return *children_.at(i).node; }

    int visits = 0;
    RewardVector reward{0.0, 0.0};

    bool fully_expanded() const noexcept { return fully_expanded_; }

    /// Moves this node may expand into: legal_moves, optionally pruned by reward.
    const std::vector<ConcreteMove>& candidate_moves(const SearchConfig& cfg);

private:
    friend SearchNode& expand(SearchNode& node, const SearchConfig& cfg);

    GameBoard board_;
    Color turn_;
    bool terminate_;
    SearchNode* parent_;
    std::vector<Edge> children_;
    bool fully_expanded_ = false;
    std::optional<std::vector<ConcreteMove>> candidates_;
};

struct MinimaxResult {
    double score = 0.0;
    std::optional<ConcreteMove> best_move;
};

/// Plain minimax (no alpha-beta). Leaves are scored from `perspective`; the
/// maximizing side is `to_move` when max_player is true. Ties keep the first
/// move in legal_moves order.
MinimaxResult minimax(const GameBoard& board, Color to_move, int depth, bool max_player,
                      Color perspective, const RewardConfig& rewards = {},
                      double king_weight = 0.5);

/// Node form: the maximizing side is node.turn() when max_player is true.
MinimaxResult minimax(const SearchNode& node, int depth, bool max_player,
                      const SearchConfig& cfg);

/// Child index maximizing Q[turn]/N + c * sqrt(ln N_parent / N_child).
std::size_t uct_best_child(const SearchNode& node, double c);

/// Adds one child for the next untried candidate move and returns it.
SearchNode& expand(SearchNode& node, const SearchConfig& cfg);

/// Rollout from `node`: each step the side to move plays its minimax move
/// (or a random move when cfg.minimax_depth == 0).
RewardVector simulate(const SearchNode& node, const SearchConfig& cfg, std::mt19937_64& rng);

/// Walks leaf->root; the ancestor at distance d gains gamma^d * delta and one visit.
void backpropagate(SearchNode& leaf, const RewardVector& delta, double gamma);

struct SearchResult {
    ConcreteMove move;
    int reward = 0;
    GameBoard next_board;
};

/// MCTS with minimax rollouts. Keeps the tree for inspection after run().
class MctsSearch {
public:
    MctsSearch(const GameBoard& board, Color agent, SearchConfig cfg);

    /// Runs cfg.iterations iterations and returns the best root action, or
    /// nullopt when the agent has no legal move.
    std::optional<SearchResult> run();

    const SearchNode& root() const noexcept { return *root_; }

private:
    void iterate();

    Color agent_;
    SearchConfig cfg_;
    std::unique_ptr<SearchNode> root_;
    std::mt19937_64 rng_;
};

std::optional<SearchResult> mcts_search(const GameBoard& board, Color agent,
                                        const SearchConfig& cfg);

/// Groups items by reward and keeps the highest-reward group in input order.
template <class T, class RewardOf>
std::vector<T> prune_by_reward(std::span<const T> items, RewardOf reward_of)
{
    if (items.empty())
        throw std::invalid_argument("prune_by_reward: empty move list");
    std::map<int, std::vector<T>> by_reward;
    for (const auto& item : items)
        by_reward[reward_of(item)].push_back(item);
    return by_reward.rbegin()->second;
}

inline std::vector<ConcreteMove> prune_by_reward(std::span<const ConcreteMove> moves)
{
    return prune_by_reward(moves, [](const ConcreteMove& m) { return m.reward; });
}

} // namespace checkmine
