#pragma once

#include "checkmine/features.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace checkmine {

struct TransitionEvent {
    int case_id = 0;
    std::string label;

    friend bool operator==(const TransitionEvent&, const TransitionEvent&) = default;
};

using Trace = std::vector<std::string>;

/// Cases (episodes) of ordered events over an alphabet of transition labels.
class EventLog {
public:
    EventLog() = default;

    /// Throws std::invalid_argument if the case id is already present or a label is empty.
    void add_case(int case_id, const std::vector<std::string>& labels);

    /// Builds a log with case ids 1..n from plain activity sequences.
    static EventLog from_traces(std::span<const Trace> traces);

    const std::map<int, std::vector<TransitionEvent>>& cases() const noexcept { return cases_; }
    const std::set<std::string>& alphabet() const noexcept { return alphabet_; }

    /// Activity sequences in case-id order.
    std::vector<Trace> traces() const;

    bool empty() const noexcept { return cases_.empty(); }
    std::size_t case_count() const noexcept { return cases_.size(); }
    std::size_t event_count() const noexcept;

    friend bool operator==(const EventLog&, const EventLog&) = default;

private:
    std::map<int, std::vector<TransitionEvent>> cases_;
    std::set<std::string> alphabet_;
};

/// One case per episode; each step becomes a ((last_id,last_move),(piece_id,move),reward) event.
EventLog build_event_log(std::span<const std::pair<int, std::vector<StepRecord>>> traces);

/// I/O failures carry the offending path in the message.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LogFormat { Csv, Xes };

LogFormat parse_log_format(const std::string& name);

/// Header of the per-episode table.
inline constexpr const char* kEpisodeHeader =
    "last_turn_id,last_turn_movement,piece_id,move,captured,reward";

void export_episode_table(std::span<const StepRecord> trace, const std::filesystem::path& path);
std::vector<StepRecord> import_episode_table(const std::filesystem::path& path);

/// CSV logs use the header "case_id,transition" (a case without events is a
/// single row with an empty transition); XES logs store case ids as
/// trace concept:name and labels as event concept:name.
void export_log(const EventLog& log, const std::filesystem::path& path, LogFormat format);
EventLog import_log(const std::filesystem::path& path, LogFormat format);

/// Format chosen by file extension (.xes or anything else as CSV).
EventLog import_log(const std::filesystem::path& path);

/// "{color}_episode{i}.csv"
std::string episode_file_name(Color color, int episode);

} // namespace checkmine
