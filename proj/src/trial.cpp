#include "checkmine/trial.hpp"

#include "csv.hpp"

#include <fstream>
#include <numeric>

namespace checkmine {

std::string to_string(Miner m) { return m == Miner::Alpha ? "alpha" : "inductive"; }

Miner parse_miner(const std::string& name)
{
    if (name == "alpha")
        return Miner::Alpha;
    if (name == "inductive")
        return Miner::Inductive;
    throw std::invalid_argument("unknown miner '" + name + "' (expected alpha or inductive)");
}

PetriNet mine(const EventLog& log, Miner miner)
{
    if (log.empty())
        throw std::invalid_argument("mine: empty log");
    return miner == Miner::Alpha ? alpha_miner(log) : tree_to_net(inductive_miner(log));
}

std::string to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::Iterations:
        return "iterations";
    case SweepParameter::SimulationDepth:
        return "sim_depth";
    case SweepParameter::MinimaxDepth:
        return "minimax_depth";
    }
    return "?";
}

Profile parse_profile(const std::string& name)
{
    if (name == "smoke")
        return Profile::Smoke;
    if (name == "full")
        return Profile::Full;
    throw std::invalid_argument("unknown profile '" + name + "' (expected smoke or full)");
}

TrialSpec trial_spec(int trial, Profile profile)
{
    const bool smoke = profile == Profile::Smoke;
    TrialSpec spec;
    spec.trial = trial;
    spec.episodes = smoke ? 10 : 100;
    auto& s = spec.base.search;
    s.iterations = smoke ? 100 : 3000;
    s.simulation_depth = smoke ? 10 : 30;
    s.minimax_depth = smoke ? 1 : 3;
    switch (trial) {
    case 1:
        spec.swept = SweepParameter::Iterations;
        spec.values = smoke ? std::vector{50, 100} : std::vector{1000, 2000, 3000};
        break;
    case 2:
        spec.swept = SweepParameter::SimulationDepth;
        spec.values = smoke ? std::vector{5, 10} : std::vector{10, 20, 30};
        break;
    case 3:
        spec.swept = SweepParameter::MinimaxDepth;
        spec.values = smoke ? std::vector{1, 2} : std::vector{1, 2, 3};
        break;
    default:
        throw std::invalid_argument("trial must be 1, 2 or 3, got " + std::to_string(trial));
    }
    return spec;
}

EpisodeConfig cell_config(const TrialSpec& spec, int value)
{
    EpisodeConfig cfg = spec.base;
    switch (spec.swept) {
    case SweepParameter::Iterations:
        cfg.search.iterations = value;
        break;
    case SweepParameter::SimulationDepth:
        cfg.search.simulation_depth = value;
        break;
    case SweepParameter::MinimaxDepth:
        cfg.search.minimax_depth = value;
        break;
    }
    cfg.search.rng_seed = turn_seed(spec.seed, spec.trial, value);
    return cfg;
}

std::string cell_name(const TrialSpec& spec, int value) { return to_string(spec.swept) + "=" + std::to_string(value); }

std::string CellReport::model_name() const
{
    return cell + " " + (color == Color::Red ? "red" : "white") + " " + to_string(miner);
}

namespace {

std::string color_prefix(Color c) { return c == Color::Red ? "red" : "white"; }

std::string extension(LogFormat f) { return f == LogFormat::Xes ? ".xes" : ".csv"; }

void write_classification(const std::vector<CellReport>& reports, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << "Model,Classification,Source Places,Sink Places,Error\n";
    for (const auto& r : reports)
        csv::write_row(os, {r.model_name(),
                            r.report ? to_string(classify_fitting(*r.report)) : std::string("failed"),
                            std::to_string(r.source_places), std::to_string(r.sink_places), r.error});
    if (!os)
        throw IoError("write failed for '" + path.string() + "'");
}

void run_cell(const TrialSpec& spec, int value, const std::filesystem::path& dir, TrialSummary& summary)
{
    const EpisodeConfig cfg = cell_config(spec, value);
    std::vector<int> ids(static_cast<std::size_t>(spec.episodes));
    std::iota(ids.begin(), ids.end(), 1);
    const auto episodes = play_episodes(cfg, ids, spec.workers);

    const auto episode_dir = dir / "episodes";
    std::filesystem::create_directories(episode_dir);
    for (const auto& e : episodes) {
        export_episode_table(e.red, episode_dir / episode_file_name(Color::Red, e.episode_id));
        export_episode_table(e.white, episode_dir / episode_file_name(Color::White, e.episode_id));
    }

    for (const Color color : {Color::Red, Color::White}) {
        const EventLog log = color == Color::Red ? red_log(episodes) : white_log(episodes);
        const std::string prefix = color_prefix(color);
        export_log(log, dir / (prefix + "_log" + extension(spec.format)), spec.format);
        for (const Miner miner : {Miner::Alpha, Miner::Inductive}) {
            CellReport r;
            r.cell = cell_name(spec, value);
            r.color = color;
            r.miner = miner;
            try {
                const PetriNet net = mine(log, miner);
                r.source_places = net.source_places().size();
                r.sink_places = net.sink_places().size();
                const auto stem = dir / (prefix + "_" + to_string(miner));
                save_net(net, stem.string() + ".json");
                export_dot(net, stem.string() + ".dot");
                r.report = fitness_metrics(log, net, spec.workers, spec.alignment);
            } catch (const IoError&) {
                throw;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            summary.reports.push_back(std::move(r));
        }
    }
}

} // namespace

TrialSummary run_trial(const TrialSpec& spec, const std::filesystem::path& out_dir)
{
    if (spec.values.empty())
        throw std::invalid_argument("run_trial: no sweep values");
    if (spec.episodes < 1)
        throw std::invalid_argument("run_trial: episodes must be positive");

    TrialSummary summary;
    summary.trial = spec.trial;
    const auto trial_dir = out_dir / ("trial" + std::to_string(spec.trial));
    std::filesystem::create_directories(trial_dir);

    for (const int value : spec.values) {
        const auto name = cell_name(spec, value);
        try {
            run_cell(spec, value, trial_dir / name, summary);
        } catch (const IoError&) {
            throw;
        } catch (const std::exception& e) {
            summary.failed_cells.push_back(name + ": " + e.what());
        }
    }

    std::vector<NamedReport> named;
    for (const auto& r : summary.reports)
        if (r.report)
            named.push_back({r.model_name(), *r.report});
    export_report_csv(named, trial_dir / "global_stats.csv");
    write_classification(summary.reports, trial_dir / "classification.csv");
    return summary;
}

} // namespace checkmine
