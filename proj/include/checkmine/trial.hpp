#pragma once

// Pipeline orchestration: episode batches -> logs -> mined nets -> fitness.

#include "checkmine/conformance.hpp"
#include "checkmine/discovery.hpp"
#include "checkmine/episodes.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace checkmine {

enum class Miner { Alpha, Inductive };

std::string to_string(Miner m);
/// "alpha" or "inductive"; throws std::invalid_argument otherwise.
Miner parse_miner(const std::string& name);

/// Throws std::invalid_argument for an empty log.
PetriNet mine(const EventLog& log, Miner miner);

enum class SweepParameter { Iterations, SimulationDepth, MinimaxDepth };

std::string to_string(SweepParameter p);

enum class Profile { Smoke, Full };

Profile parse_profile(const std::string& name);

struct TrialSpec {
    int trial = 1;
    /// Fixed parameters; the swept one is overwritten per cell.
    EpisodeConfig base{};
    SweepParameter swept = SweepParameter::Iterations;
    std::vector<int> values;
    int episodes = 100;
    int workers = 0;
    std::uint64_t seed = 0;
    LogFormat format = LogFormat::Csv;
    AlignmentOptions alignment{};
};

/// Trial 1 sweeps iterations, trial 2 simulation depth, trial 3 minimax depth.
/// Throws std::invalid_argument for a trial outside 1..3.
TrialSpec trial_spec(int trial, Profile profile);

/// Episode config of one cell; its seed depends on the trial and the swept value only.
EpisodeConfig cell_config(const TrialSpec& spec, int value);

/// "iterations=100"
std::string cell_name(const TrialSpec& spec, int value);

struct CellReport {
    std::string cell;
    Color color = Color::Red;
    Miner miner = Miner::Alpha;
    std::optional<FitnessReport> report;
    /// Set when mining or conformance failed for this cell.
    std::string error;
    std::size_t source_places = 0;
    std::size_t sink_places = 0;

    std::string model_name() const;
    bool fitting() const { return report && classify_fitting(*report) == Fitting::Fitting; }
};

struct TrialSummary {
    int trial = 1;
    std::vector<CellReport> reports;
    std::vector<std::string> failed_cells;
};

/// Runs every cell of the sweep and writes, under out_dir/trial{n}/:
///   {cell}/episodes/{color}_episode{i}.csv, {cell}/{color}_log.{csv|xes},
///   {cell}/{color}_{miner}.json and .dot, global_stats.csv, classification.csv.
/// A cell whose episodes fail is recorded and skipped.
TrialSummary run_trial(const TrialSpec& spec, const std::filesystem::path& out_dir);

} // namespace checkmine
