#include "checkmine/explain.hpp"
#include "checkmine/trial.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

using namespace checkmine;

namespace {

struct GameOptions {
    EpisodeConfig cfg{};
    std::uint64_t seed = 0;
    int workers = 0;
    std::string format = "csv";
    std::string out = "out";
};

void add_search_options(CLI::App& app, GameOptions& o)
{
    auto& s = o.cfg.search;
    app.add_option("--iterations", s.iterations, "MCTS iterations per move")->capture_default_str();
    app.add_option("--sim-depth", s.simulation_depth, "Rollout depth")->capture_default_str();
    app.add_option("--minimax-depth", s.minimax_depth, "Minimax depth inside rollouts (0 = random)")
        ->capture_default_str();
    app.add_option("--pieces", o.cfg.pieces_per_side, "Pieces per side")->capture_default_str();
    app.add_option("--seed", o.seed, "Base RNG seed")->capture_default_str();
    app.add_option("--workers", o.workers, "OpenMP workers (0 = all)")->capture_default_str();
    app.add_option("--forced-capture", s.rewards.forced_capture, "Jumps are mandatory when available")
        ->capture_default_str();
    app.add_option("--reward-capture", s.rewards.capture_points, "Reward per captured piece")->capture_default_str();
    app.add_option("--reward-crown", s.rewards.crown_points, "Reward for crowning")->capture_default_str();
    app.add_flag("--pruning", s.pruning_enabled, "Expand only the highest-reward moves");
    app.add_flag("--bfs-feature", o.cfg.bfs_feature, "Log red/white distance change instead of direction");
    app.add_option("--format", o.format, "Event log format")
        ->check(CLI::IsMember({"csv", "xes"}))
        ->capture_default_str();
    app.add_option("--out", o.out, "Output directory")->capture_default_str();
}

std::string extension(LogFormat f) { return f == LogFormat::Xes ? ".xes" : ".csv"; }

int run_play(const GameOptions& o, int episodes)
{
    EpisodeConfig cfg = o.cfg;
    cfg.search.rng_seed = o.seed;
    std::vector<int> ids(static_cast<std::size_t>(episodes));
    std::iota(ids.begin(), ids.end(), 1);
    const auto results = play_episodes(cfg, ids, o.workers);

    const std::filesystem::path dir = o.out;
    std::filesystem::create_directories(dir / "episodes");
    int red = 0;
    int white = 0;
    for (const auto& e : results) {
        export_episode_table(e.red, dir / "episodes" / episode_file_name(Color::Red, e.episode_id));
        export_episode_table(e.white, dir / "episodes" / episode_file_name(Color::White, e.episode_id));
        red += e.winner == Color::Red;
        white += e.winner == Color::White;
    }
    const LogFormat fmt = parse_log_format(o.format);
    export_log(red_log(results), dir / ("red_log" + extension(fmt)), fmt);
    export_log(white_log(results), dir / ("white_log" + extension(fmt)), fmt);
    std::cout << "episodes " << results.size() << ": red wins " << red << ", white wins " << white << ", draws "
              << results.size() - static_cast<std::size_t>(red + white) << '\n'
              << "logs written to " << dir.string() << '\n';
    return 0;
}

void print_report(const std::string& name, const FitnessReport& r)
{
    const NamedReport named{name, r};
    write_report_csv(std::cout, std::span(&named, 1));
    std::cout << "classification: " << to_string(classify_fitting(r)) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MCTS-minimax checkers self-play, process discovery and explanation"};
    app.require_subcommand(1);

    GameOptions play_opts;
    int play_episodes_n = 10;
    auto* play = app.add_subcommand("play", "Play self-play episodes and write episode tables and logs");
    add_search_options(*play, play_opts);
    play->add_option("--episodes", play_episodes_n, "Number of episodes")->capture_default_str();

    std::string mine_log;
    std::string mine_miner = "inductive";
    std::string mine_out = "net.json";
    std::string mine_dot;
    auto* mine_cmd = app.add_subcommand("mine", "Discover a Petri net from an event log");
    mine_cmd->add_option("log", mine_log, "Event log (.csv or .xes)")->required()->check(CLI::ExistingFile);
    mine_cmd->add_option("--miner", mine_miner, "alpha or inductive")
        ->check(CLI::IsMember({"alpha", "inductive"}))
        ->capture_default_str();
    mine_cmd->add_option("--out", mine_out, "Net JSON output")->capture_default_str();
    mine_cmd->add_option("--dot", mine_dot, "Also write a DOT rendering");

    std::string check_log;
    std::string check_net;
    std::string check_out;
    int check_workers = 0;
    auto* check = app.add_subcommand("check", "Alignment-based fitness of a net against a log");
    check->add_option("log", check_log, "Event log")->required()->check(CLI::ExistingFile);
    check->add_option("net", check_net, "Net JSON")->required()->check(CLI::ExistingFile);
    check->add_option("--workers", check_workers, "OpenMP workers (0 = all)");
    check->add_option("--out", check_out, "Write the report table to this CSV file");

    std::string ex_log;
    std::string ex_net;
    int ex_layer = 1;
    std::string ex_context = "(-1,\"()\")";
    std::string ex_alternative;
    int ex_lookahead = 2;
    bool ex_json = false;
    auto* explain = app.add_subcommand("explain", "Recommend an action, or explain why not an alternative");
    explain->add_option("log", ex_log, "Event log")->required()->check(CLI::ExistingFile);
    explain->add_option("net", ex_net, "Net JSON mined from the log")->required()->check(CLI::ExistingFile);
    explain->add_option("--layer", ex_layer, "1-based turn index within a case")->capture_default_str();
    explain->add_option("--context", ex_context, "Enemy's last move, e.g. (3,\"(right,up)\")")->capture_default_str();
    explain->add_option("--why-not", ex_alternative, "Alternative action, e.g. (2,\"(left,down)\")");
    explain->add_option("--lookahead", ex_lookahead, "Layers searched for future rewards")->capture_default_str();
    explain->add_flag("--json", ex_json, "Machine-readable output");

    GameOptions trial_opts;
    int trial_number = 1;
    std::string trial_profile = "smoke";
    int trial_episodes = 0;
    auto* trial = app.add_subcommand("trial", "Run a parameter sweep end to end");
    trial->add_option("--trial", trial_number, "1 = iterations, 2 = simulation depth, 3 = minimax depth")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    trial->add_option("--profile", trial_profile, "smoke or full")
        ->check(CLI::IsMember({"smoke", "full"}))
        ->capture_default_str();
    trial->add_option("--episodes", trial_episodes, "Episodes per cell (default from profile)");
    add_search_options(*trial, trial_opts);

    std::string render_net;
    std::string render_out;
    int render_pieces = 3;
    auto* render_cmd = app.add_subcommand("render", "Render a net as DOT, or the opening board as text");
    render_cmd->add_option("--net", render_net, "Net JSON")->check(CLI::ExistingFile);
    render_cmd->add_option("--pieces", render_pieces, "Pieces per side for the board")->capture_default_str();
    render_cmd->add_option("--out", render_out, "Output file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*play)
            return run_play(play_opts, play_episodes_n);

        if (*mine_cmd) {
            const PetriNet net = mine(import_log(mine_log), parse_miner(mine_miner));
            save_net(net, mine_out);
            if (!mine_dot.empty())
                export_dot(net, mine_dot);
            std::cout << mine_miner << " net: " << net.places().size() << " places, " << net.transitions().size()
                      << " transitions, " << net.arc_count() << " arcs -> " << mine_out << '\n';
            return 0;
        }

        if (*check) {
            const auto report = fitness_metrics(import_log(check_log), load_net(check_net), check_workers);
            print_report(std::filesystem::path(check_net).stem().string(), report);
            if (!check_out.empty()) {
                const NamedReport named{std::filesystem::path(check_net).stem().string(), report};
                export_report_csv(std::span(&named, 1), check_out);
            }
            return 0;
        }

        if (*explain) {
            const Explainer ex(import_log(ex_log), load_net(ex_net), 0, ExplainOptions{ex_lookahead});
            const DecisionContext context = parse_context(ex_context);
            if (ex_alternative.empty()) {
                const auto r = ex.recommend(ex_layer, context);
                std::cout << (ex_json ? to_json(r).dump(2) : explain_text(r)) << '\n';
            } else {
                const auto w = ex.why_not(ex_layer, context, parse_action(ex_alternative));
                std::cout << (ex_json ? to_json(w).dump(2) : explain_text(w, ExplainOptions{ex_lookahead})) << '\n';
            }
            return 0;
        }

        if (*trial) {
            TrialSpec spec = trial_spec(trial_number, parse_profile(trial_profile));
            // Explicitly given search flags override the profile's fixed parameters.
            auto& base = spec.base.search;
            const auto& given = trial_opts.cfg.search;
            if (trial->count("--iterations"))
                base.iterations = given.iterations;
            if (trial->count("--sim-depth"))
                base.simulation_depth = given.simulation_depth;
            if (trial->count("--minimax-depth"))
                base.minimax_depth = given.minimax_depth;
            base.rewards = given.rewards;
            base.pruning_enabled = given.pruning_enabled;
            spec.base.pieces_per_side = trial_opts.cfg.pieces_per_side;
            spec.base.bfs_feature = trial_opts.cfg.bfs_feature;
            if (trial_episodes > 0)
                spec.episodes = trial_episodes;
            spec.workers = trial_opts.workers;
            spec.seed = trial_opts.seed;
            spec.format = parse_log_format(trial_opts.format);

            const auto summary = run_trial(spec, trial_opts.out);
            for (const auto& r : summary.reports) {
                std::cout << r.model_name() << ": ";
                if (r.report)
                    std::cout << to_string(classify_fitting(*r.report)) << " (trace " << r.report->trace_fitness
                              << ", move-model " << r.report->move_model_fitness << ", move-log "
                              << r.report->move_log_fitness << ")\n";
                else
                    std::cout << "failed: " << r.error << '\n';
            }
            for (const auto& f : summary.failed_cells)
                std::cout << "cell failed: " << f << '\n';
            return summary.failed_cells.empty() ? 0 : 1;
        }

        if (*render_cmd) {
            const std::string text =
                render_net.empty() ? render(initial_board(render_pieces)) : to_dot(load_net(render_net));
            if (render_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream os(render_out, std::ios::binary);
                if (!(os << text))
                    throw IoError("cannot write '" + render_out + "'");
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
