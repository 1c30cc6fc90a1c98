#include "checkmine/search.hpp"

#include <limits>
#include <string>

namespace checkmine {

void validate(const SearchConfig& cfg)
{
    if (cfg.iterations < 1)
        throw std::invalid_argument("iterations must be >= 1");
    if (cfg.simulation_depth < 0 || cfg.minimax_depth < 0)
        throw std::invalid_argument("search depths must be >= 0");
    if (!(cfg.discount > 0.0 && cfg.discount <= 1.0))
        throw std::invalid_argument("discount must lie in (0, 1]");
    if (cfg.exploration_constant < 0.0)
        throw std::invalid_argument("exploration constant must be >= 0");
    if (cfg.rewards.capture_points < 0 || cfg.rewards.crown_points < 0)
        throw std::invalid_argument("reward points must be >= 0");
}

SearchNode::SearchNode(GameBoard board, Color turn, SearchNode* parent)
    : board_(std::move(board)), turn_(turn), parent_(parent)
{
    terminate_ = winner(board_, turn_).has_value();
}

const std::vector<ConcreteMove>& SearchNode::candidate_moves(const SearchConfig& cfg)
{
    if (!candidates_) {
        auto moves = legal_moves(board_, turn_, cfg.rewards);
        if (cfg.pruning_enabled && !moves.empty())
            moves = prune_by_reward(std::span<const ConcreteMove>(moves));
        candidates_ = std::move(moves);
    }
    return *candidates_;
}

MinimaxResult minimax(const GameBoard& board, Color to_move, int depth, bool max_player,
                      Color perspective, const RewardConfig& rewards, double king_weight)
{
    if (depth < 0)
        throw std::invalid_argument("minimax depth must be >= 0");
    if (depth == 0)
        return {evaluate(board, perspective, king_weight), std::nullopt};

    // A side without pieces or moves has lost: the position is terminal.
    const auto moves = legal_moves(board, to_move, rewards);
    if (moves.empty())
        return {evaluate(board, perspective, king_weight), std::nullopt};

    constexpr double inf = std::numeric_limits<double>::infinity();
    MinimaxResult best{max_player ? -inf : inf, std::nullopt};
    for (const auto& move : moves) {
        const GameBoard next = apply_legal_move(board, move);
        const double score = minimax(next, opponent(to_move), depth - 1, !max_player, perspective,
                                     rewards, king_weight)
                                 .score;
        const bool better = max_player ? score > best.score : score < best.score;
        if (better || !best.best_move) {
            best.score = score;
            best.best_move = move;
        }
    }
    return best;
}

MinimaxResult minimax(const SearchNode& node, int depth, bool max_player, const SearchConfig& cfg)
{
    const Color perspective = max_player ? node.turn() : opponent(node.turn());
    return minimax(node.board(), node.turn(), depth, max_player, perspective, cfg.rewards,
                   cfg.king_weight);
}

std::size_t uct_best_child(const SearchNode& node, double c)
{
    const auto& children = node.children();
    if (children.empty())
        throw std::logic_error("uct_best_child: node has no children");
    const std::size_t idx = turn_index(node.turn());
    const double log_parent = std::log(static_cast<double>(node.visits));

    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < children.size(); ++i) {
        const SearchNode& ch = *children[i].node;
        if (ch.visits < 1)
            throw std::logic_error("uct_best_child: unvisited child " + std::to_string(i));
        const double n = ch.visits;
        const double value = ch.reward[idx] / n + c * std::sqrt(log_parent / n);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    return best;
}

SearchNode& expand(SearchNode& node, const SearchConfig& cfg)
{
    if (node.terminate())
        throw std::logic_error("expand: node is terminal");
    if (node.fully_expanded())
        throw std::logic_error("expand: node is fully expanded");

    const auto& moves = node.candidate_moves(cfg);
    const ConcreteMove& move = moves[node.children_.size()];
    auto child = std::make_unique<SearchNode>(apply_legal_move(node.board_, move),
                                              opponent(node.turn_), &node);
    node.children_.push_back({move, std::move(child)});
    if (node.children_.size() == moves.size())
        node.fully_expanded_ = true;
    return *node.children_.back().node;
}

RewardVector simulate(const SearchNode& node, const SearchConfig& cfg, std::mt19937_64& rng)
{
    RewardVector reward{0.0, 0.0};
    GameBoard board = node.board();
    Color turn = node.turn();
    bool terminate = node.terminate();

    for (int depth = 0; !terminate && depth < cfg.simulation_depth; ++depth) {
        ConcreteMove move;
        if (cfg.minimax_depth == 0) {
            const auto moves = legal_moves(board, turn, cfg.rewards);
            if (moves.empty())
                break;
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            move = moves[pick(rng)];
        } else {
            auto result = minimax(board, turn, cfg.minimax_depth, true, turn, cfg.rewards,
                                  cfg.king_weight);
            if (!result.best_move)
                break;
            move = std::move(*result.best_move);
        }
        reward[turn_index(turn)] += move.reward;
        board = apply_legal_move(board, move);
        turn = opponent(turn);
        terminate = winner(board, turn).has_value();
    }
    return reward;
}

void backpropagate(SearchNode& leaf, const RewardVector& delta, double gamma)
{
    double scale = 1.0;
    for (SearchNode* n = &leaf; n != nullptr; n = n->parent()) {
        n->visits += 1;
        n->reward[0] += scale * delta[0];
        n->reward[1] += scale * delta[1];
        scale *= gamma;
    }
}

MctsSearch::MctsSearch(const GameBoard& board, Color agent, SearchConfig cfg)
    : agent_(agent), cfg_(std::move(cfg)), root_(std::make_unique<SearchNode>(board, agent)),
      rng_(cfg_.rng_seed)
{
    validate(cfg_);
}

void MctsSearch::iterate()
{
    // Rewards of the tree edges walked this iteration are credited together
    // with the rollout, so a child's value includes the move that created it.
    RewardVector path{0.0, 0.0};
    SearchNode* node = root_.get();
    while (!node->terminate() && node->fully_expanded()) {
        const std::size_t i = uct_best_child(*node, cfg_.exploration_constant);
        path[turn_index(node->turn())] += node->children()[i].move.reward;
        node = &node->child(i);
    }
    if (!node->terminate()) {
        const Color mover = node->turn();
        node = &expand(*node, cfg_);
        path[turn_index(mover)] += node->parent()->children().back().move.reward;
    }
    RewardVector delta = simulate(*node, cfg_, rng_);
    delta[0] += path[0];
    delta[1] += path[1];
    backpropagate(*node, delta, cfg_.discount);
}

std::optional<SearchResult> MctsSearch::run()
{
    if (root_->terminate())
        return std::nullopt;
    for (int i = 0; i < cfg_.iterations; ++i)
        iterate();

    const std::size_t idx = turn_index(agent_);
    const auto& children = root_->children();
    std::size_t best = 0;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < children.size(); ++i) {
        const SearchNode& ch = *children[i].node;
        if (ch.visits == 0)
            continue;
        const double mean = ch.reward[idx] / ch.visits;
        if (mean > best_mean) {
            best_mean = mean;
            best = i;
        }
    }
    const auto& edge = children[best];
    return SearchResult{edge.move, edge.move.reward, edge.node->board()};
}

std::optional<SearchResult> mcts_search(const GameBoard& board, Color agent,
                                        const SearchConfig& cfg)
{
    return MctsSearch(board, agent, cfg).run();
}

} // namespace checkmine
