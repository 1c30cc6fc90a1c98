#pragma once

#include "checkmine/event_log.hpp"
#include "checkmine/features.hpp"
#include "checkmine/search.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace checkmine {

struct EpisodeConfig {
    SearchConfig search{};
    int pieces_per_side = 3;
    /// Games still running after this many turns end as a draw.
    int max_turns = 200;
    /// Replace direction tokens with the change of red/white BFS distance.
    bool bfs_feature = false;
};

struct EpisodeResult {
    int episode_id = 0;
    std::vector<StepRecord> red;
    std::vector<StepRecord> white;
    /// nullopt when the turn cap was hit.
    std::optional<Color> winner;
    int turns = 0;
    GameBoard final_board{};
    Color to_move = Color::Red;

    bool draw() const noexcept { return !winner.has_value(); }
};

/// Seed for the agent acting on `turn` of `episode_id`; independent of how
/// episodes are distributed over workers.
std::uint64_t turn_seed(std::uint64_t base, int episode_id, int turn);

/// Self-play from the opening position. RED moves first; each side's record
/// carries the opponent's previous (piece id, movement), starting at (-1, ()).
EpisodeResult play_episode(const EpisodeConfig& cfg, int episode_id);

/// Parallel batch over OpenMP workers (0 = all available).
std::vector<EpisodeResult> play_episodes(const EpisodeConfig& cfg, std::span<const int> episode_ids,
                                         int workers = 0);

/// Serial reference for play_episodes.
std::vector<EpisodeResult> play_episodes_serial(const EpisodeConfig& cfg,
                                                std::span<const int> episode_ids);

/// Red and white logs, one case per episode.
EventLog red_log(std::span<const EpisodeResult> episodes);
EventLog white_log(std::span<const EpisodeResult> episodes);

} // namespace checkmine
