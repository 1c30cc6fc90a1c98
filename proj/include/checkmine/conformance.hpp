#pragma once

#include "checkmine/event_log.hpp"
#include "checkmine/petri_net.hpp"

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace checkmine {

/// The final marking cannot be reached by model moves alone.
class ModelUnsound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The alignment search visited more states than allowed.
class SearchLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MoveKind { Synchronous, LogOnly, ModelOnly, Silent };

struct AlignmentMove {
    MoveKind kind = MoveKind::Synchronous;
    /// Trace activity for synchronous and log-only moves, transition label
    /// for model-only moves, empty for silent moves.
    std::string activity;
    /// Fired transition, -1 for log-only moves.
    int transition = -1;

    friend bool operator==(const AlignmentMove&, const AlignmentMove&) = default;
};

struct AlignmentResult {
    std::vector<AlignmentMove> moves;
    int raw_cost = 0;
    std::size_t states_explored = 0;
    std::chrono::duration<double, std::milli> calc_time{};

    std::size_t count(MoveKind kind) const;
};

struct AlignmentOptions {
    std::size_t max_states = 1'000'000;
    /// A* guided by the LP relaxation of the marking equation. Off gives plain
    /// uniform-cost search; the optimal cost is the same either way.
    bool heuristic = true;
};

/// Minimal-cost alignment by best-first search over (trace position, marking).
/// Costs: synchronous 0, silent 0, log-only 1, visible model-only 1.
/// Throws ModelUnsound if the final marking is unreachable and
/// SearchLimitExceeded if the state budget runs out.
AlignmentResult optimal_alignment(std::span<const std::string> trace, const PetriNet& net,
                                  const AlignmentOptions& opts = {});

/// Cost of the cheapest firing sequence from the initial to the final marking,
/// counting visible transitions only.
int shortest_model_path(const PetriNet& net, const AlignmentOptions& opts = {});

struct TraceMetrics {
    double trace_fitness = 1.0;
    double move_model_fitness = 1.0;
    double move_log_fitness = 1.0;
};

/// Per-trace metrics from an alignment. `model_path_cost` is shortest_model_path(net).
TraceMetrics trace_metrics(const AlignmentResult& a, std::size_t trace_length, int model_path_cost);

struct FitnessReport {
    double trace_fitness = 1.0;
    double move_model_fitness = 1.0;
    double move_log_fitness = 1.0;
    /// Mean alignment cost per trace.
    double raw_fitness_cost = 0.0;
    double trace_length = 0.0;
    double num_states = 0.0;
    double calc_time_ms = 0.0;
    double preprocess_time_ms = 0.0;
    double approx_memory_kb = 0.0;
    std::size_t traces = 0;
};

/// Averages per-trace metrics over all cases of the log. Identical traces are
/// aligned once. Alignments run on OpenMP workers (0 = all available).
/// Throws std::invalid_argument for an empty log.
FitnessReport fitness_metrics(const EventLog& log, const PetriNet& net, int workers = 0,
                              const AlignmentOptions& opts = {});

/// Single-threaded reference for fitness_metrics.
FitnessReport fitness_metrics_serial(const EventLog& log, const PetriNet& net,
                                     const AlignmentOptions& opts = {});

enum class Fitting { Fitting, NonFitting };

inline constexpr double kFittingTolerance = 1e-12;

/// Fitting iff all three fitness values equal 1 within kFittingTolerance.
Fitting classify_fitting(const FitnessReport& report);

std::string to_string(Fitting f);

struct NamedReport {
    std::string model;
    FitnessReport report;
};

/// Header of the global-statistics table.
inline constexpr const char* kReportHeader =
    "Model,Calc. Time,Num. States,Trace Fitness,Raw Fitness Cost,Move-Model Fitness,"
    "Pre-process time,Move-Log Fitness,Trace Length,Approx. mem. used";

void write_report_csv(std::ostream& os, std::span<const NamedReport> reports);
void export_report_csv(std::span<const NamedReport> reports, const std::filesystem::path& path);

} // namespace checkmine
