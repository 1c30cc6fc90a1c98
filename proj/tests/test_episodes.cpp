#include "checkmine/episodes.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace checkmine;

namespace {

EpisodeConfig small_config()
{
    EpisodeConfig cfg;
    cfg.search.iterations = 30;
    cfg.search.simulation_depth = 6;
    cfg.search.minimax_depth = 1;
    cfg.search.rng_seed = 11;
    cfg.max_turns = 60;
    return cfg;
}

bool same(const EpisodeResult& a, const EpisodeResult& b)
{
    return a.episode_id == b.episode_id && a.red == b.red && a.white == b.white && a.winner == b.winner &&
           a.turns == b.turns && a.final_board == b.final_board && a.to_move == b.to_move;
}

} // namespace

TEST_CASE("each side's context is the opponent's previous action")
{
    const auto e = play_episode(small_config(), 1);
    REQUIRE_FALSE(e.red.empty());
    CHECK(e.red.front().last_turn_enemy_piece_id == -1);
    CHECK(std::holds_alternative<std::monostate>(e.red.front().last_turn_enemy_movement));
    CHECK(e.turns == static_cast<int>(e.red.size() + e.white.size()));
    CHECK(e.red.size() - e.white.size() <= 1);
    for (std::size_t k = 0; k < e.white.size(); ++k) {
        CHECK(e.white[k].last_turn_enemy_piece_id == e.red[k].piece_id);
        CHECK(e.white[k].last_turn_enemy_movement == e.red[k].move);
        if (k + 1 < e.red.size()) {
            CHECK(e.red[k + 1].last_turn_enemy_piece_id == e.white[k].piece_id);
            CHECK(e.red[k + 1].last_turn_enemy_movement == e.white[k].move);
        }
    }
}

TEST_CASE("episode outcome is consistent with the final board")
{
    for (int id = 1; id <= 4; ++id) {
        const auto e = play_episode(small_config(), id);
        if (e.draw()) {
            CHECK(e.turns == small_config().max_turns);
            CHECK_FALSE(winner(e.final_board, e.to_move).has_value());
        } else {
            CHECK(winner(e.final_board, e.to_move) == e.winner);
        }
        int red_captures = 0;
        for (const auto& s : e.red) {
            red_captures += static_cast<int>(s.captured.size());
            CHECK(s.reward >= 7 * static_cast<int>(s.captured.size()));
        }
        CHECK(e.final_board.count(Color::White) == 3 - red_captures);
    }
}

TEST_CASE("the turn cap ends a game as a draw")
{
    EpisodeConfig cfg = small_config();
    cfg.max_turns = 4;
    const auto e = play_episode(cfg, 1);
    CHECK(e.draw());
    CHECK(e.turns == 4);
    CHECK(e.red.size() == 2);
    CHECK(e.white.size() == 2);
}

TEST_CASE("parallel batches equal the serial reference for any worker count")
{
    const EpisodeConfig cfg = small_config();
    std::vector<int> ids(6);
    std::iota(ids.begin(), ids.end(), 1);
    const auto serial = play_episodes_serial(cfg, ids);
    for (const int workers : {1, 2, 4}) {
        const auto parallel = play_episodes(cfg, ids, workers);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            CHECK(same(parallel[i], serial[i]));
    }
}

TEST_CASE("different seeds or episode ids give independent games")
{
    EpisodeConfig a = small_config();
    EpisodeConfig b = small_config();
    b.search.rng_seed = 12;
    a.search.minimax_depth = b.search.minimax_depth = 0; // random rollouts make the seed visible
    CHECK_FALSE(same(play_episode(a, 1), play_episode(b, 1)));
    std::set<std::uint64_t> seeds;
    for (int ep = 0; ep < 20; ++ep)
        for (int turn = 0; turn < 20; ++turn)
            seeds.insert(turn_seed(5, ep, turn));
    CHECK(seeds.size() == 400);
}

TEST_CASE("bfs feature mode logs distance changes")
{
    EpisodeConfig cfg = small_config();
    cfg.bfs_feature = true;
    cfg.max_turns = 10;
    const auto e = play_episode(cfg, 1);
    for (const auto& s : e.red)
        CHECK(std::holds_alternative<DistanceDelta>(s.move));
    for (const auto& s : e.white)
        CHECK(std::holds_alternative<DistanceDelta>(s.last_turn_enemy_movement));
}

TEST_CASE("colour logs hold one case per episode")
{
    const EpisodeConfig cfg = small_config();
    const std::vector<int> ids{3, 7};
    const auto episodes = play_episodes(cfg, ids, 2);
    const EventLog red = red_log(episodes);
    const EventLog white = white_log(episodes);
    CHECK(red.case_count() == 2);
    CHECK(red.cases().contains(3));
    CHECK(red.cases().contains(7));
    CHECK(red.cases().at(3).size() == episodes[0].red.size());
    CHECK(white.cases().at(7).size() == episodes[1].white.size());
}

TEST_CASE("invalid search settings are rejected before play")
{
    EpisodeConfig cfg = small_config();
    cfg.search.iterations = 0;
    CHECK_THROWS_AS(play_episode(cfg, 1), std::invalid_argument);
    const std::vector<int> ids{1, 2};
    CHECK_THROWS_AS(play_episodes(cfg, ids, 2), std::invalid_argument);
}
