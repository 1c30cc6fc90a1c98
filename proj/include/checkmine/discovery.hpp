#pragma once

#include "checkmine/event_log.hpp"
#include "checkmine/petri_net.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace checkmine {

struct DirectlyFollowsGraph {
    std::set<std::string> activities;
    std::map<std::pair<std::string, std::string>, int> edges;
    std::map<std::string, int> start_activities;
    std::map<std::string, int> end_activities;
    int empty_traces = 0;

    bool follows(const std::string& a, const std::string& b) const
    {
        return edges.contains({a, b});
    }
};

/// Throws std::invalid_argument for a log without cases.
DirectlyFollowsGraph directly_follows(std::span<const Trace> traces);
DirectlyFollowsGraph directly_follows(const EventLog& log);

/// Classic alpha algorithm: one place per maximal (A, B) pair of the
/// causal footprint plus a source and a sink place.
PetriNet alpha_miner(std::span<const Trace> traces);
PetriNet alpha_miner(const EventLog& log);

struct ProcessTree {
    enum class Kind { Sequence, Exclusive, Parallel, Loop, Activity, Silent };

    Kind kind = Kind::Silent;
    std::string label;
    /// Loop: children[0] is the body, the rest are alternative redo parts.
    std::vector<ProcessTree> children;

    static ProcessTree activity(std::string label);
    static ProcessTree silent();
    static ProcessTree node(Kind kind, std::vector<ProcessTree> children);

    /// ->(A, +(B, C), D) style notation; X = exclusive choice, * = loop, tau = silent.
    std::string to_string() const;

    friend bool operator==(const ProcessTree&, const ProcessTree&) = default;
};

/// Basic inductive miner (no noise filtering). Cuts are tried in the order
/// exclusive, sequence, parallel, loop; a flower model is the fall-through.
/// The resulting tree replays every trace of the input log.
ProcessTree inductive_miner(std::span<const Trace> traces);
ProcessTree inductive_miner(const EventLog& log);

/// Workflow net with a single source and sink; parallel and loop operators
/// get silent routing transitions.
PetriNet tree_to_net(const ProcessTree& tree);

} // namespace checkmine
