#include "checkmine/episodes.hpp"

#include "checkmine/parallel.hpp"

namespace checkmine {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Movement movement_of(const EpisodeConfig& cfg, const GameBoard& before, const GameBoard& after,
                     const ConcreteMove& move)
{
    if (!cfg.bfs_feature)
        return abstract_move(move.from, move.to);
    const int d0 = red_white_distance(before);
    const int d1 = red_white_distance(after);
    Movement m{std::in_place_type<DistanceDelta>};
    if (d0 != kUnreachable && d1 != kUnreachable)
        std::get<DistanceDelta>(m).value = d1 - d0;
    return m;
}

EventLog log_of(std::span<const EpisodeResult> episodes, Color color)
{
    std::vector<std::pair<int, std::vector<StepRecord>>> traces;
    traces.reserve(episodes.size());
    for (const auto& e : episodes)
        traces.emplace_back(e.episode_id, color == Color::Red ? e.red : e.white);
    return build_event_log(traces);
}

} // namespace

std::uint64_t turn_seed(std::uint64_t base, int episode_id, int turn)
{
    std::uint64_t h = splitmix64(base);
    h = splitmix64(h ^ static_cast<std::uint64_t>(episode_id));
    return splitmix64(h ^ static_cast<std::uint64_t>(turn));
}

EpisodeResult play_episode(const EpisodeConfig& cfg, int episode_id)
{
    validate(cfg.search);
    EpisodeResult result;
    result.episode_id = episode_id;

    GameBoard board = initial_board(cfg.pieces_per_side);
    Color turn = Color::Red;
    int last_id = -1;
    Movement last_move{};

    while (true) {
        if (const auto w = winner(board, turn)) {
            result.winner = w;
            break;
        }
        if (result.turns >= cfg.max_turns)
            break;

        SearchConfig search = cfg.search;
        search.rng_seed = turn_seed(cfg.search.rng_seed, episode_id, result.turns);
        const auto action = mcts_search(board, turn, search);
        if (!action) {
            result.winner = opponent(turn);
            break;
        }

        StepRecord step;
        step.last_turn_enemy_piece_id = last_id;
        step.last_turn_enemy_movement = last_move;
        step.piece_id = action->move.piece_id;
        step.move = movement_of(cfg, board, action->next_board, action->move);
        step.captured = action->move.captured_ids;
        step.reward = action->reward;
        (turn == Color::Red ? result.red : result.white).push_back(step);

        last_id = step.piece_id;
        last_move = step.move;
        board = action->next_board;
        turn = opponent(turn);
        ++result.turns;
    }
    result.final_board = board;
    result.to_move = turn;
    return result;
}

std::vector<EpisodeResult> play_episodes(const EpisodeConfig& cfg, std::span<const int> episode_ids,
                                         int workers)
{
    std::vector<EpisodeResult> out(episode_ids.size());
    parallel_for(episode_ids.size(), workers,
                 [&](std::size_t i) { out[i] = play_episode(cfg, episode_ids[i]); });
    return out;
}

std::vector<EpisodeResult> play_episodes_serial(const EpisodeConfig& cfg,
                                                std::span<const int> episode_ids)
{
    std::vector<EpisodeResult> out;
    out.reserve(episode_ids.size());
    for (const int id : episode_ids)
        out.push_back(play_episode(cfg, id));
    return out;
}

EventLog red_log(std::span<const EpisodeResult> episodes) { return log_of(episodes, Color::Red); }

EventLog white_log(std::span<const EpisodeResult> episodes)
{
    return log_of(episodes, Color::White);
}

} // namespace checkmine
