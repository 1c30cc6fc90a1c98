#include "checkmine/conformance.hpp"
#include "checkmine/discovery.hpp"
#include "checkmine/episodes.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace checkmine;

namespace {

EpisodeConfig bench_config()
{
    EpisodeConfig cfg;
    cfg.search.iterations = 50;
    cfg.search.simulation_depth = 10;
    cfg.search.minimax_depth = 1;
    cfg.search.rng_seed = 7;
    return cfg;
}

std::vector<int> episode_ids(int n)
{
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 1);
    return ids;
}

void BM_EpisodesSerial(benchmark::State& state)
{
    const auto cfg = bench_config();
    const auto ids = episode_ids(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(play_episodes_serial(cfg, ids));
}

void BM_EpisodesParallel(benchmark::State& state)
{
    const auto cfg = bench_config();
    const auto ids = episode_ids(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(play_episodes(cfg, ids, 0));
}

// Inductive net of a self-play log, aligned against the same log.
struct FitnessFixture {
    EventLog log;
    PetriNet net;

    FitnessFixture()
    {
        const auto ids = episode_ids(8);
        const auto episodes = play_episodes(bench_config(), ids, 0);
        log = red_log(episodes);
        net = tree_to_net(inductive_miner(log));
    }
};

const FitnessFixture& fixture()
{
    static const FitnessFixture f;
    return f;
}

void BM_FitnessSerial(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(fitness_metrics_serial(f.log, f.net));
}

void BM_FitnessParallel(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(fitness_metrics(f.log, f.net, 0));
}

} // namespace

BENCHMARK(BM_EpisodesSerial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EpisodesParallel)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitnessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitnessParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
