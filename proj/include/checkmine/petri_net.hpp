#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace checkmine {

/// Token count per place, indexed like PetriNet::places().
using Marking = std::vector<int>;

struct NetTransition {
    std::string name;
    /// Activity label; nullopt for silent (tau) transitions.
    std::optional<std::string> label;

    bool silent() const noexcept { return !label.has_value(); }

    friend bool operator==(const NetTransition&, const NetTransition&) = default;
};

/// Place/transition net with unit arc weights.
class PetriNet {
public:
    int add_place(std::string name);
    int add_transition(std::string name, std::optional<std::string> label);
    void add_arc_place_to_transition(int place, int transition);
    void add_arc_transition_to_place(int transition, int place);

    const std::vector<std::string>& places() const noexcept { return places_; }
    const std::vector<NetTransition>& transitions() const noexcept { return transitions_; }
    const std::vector<int>& preset(int t) const { return preset_.at(t); }
    const std::vector<int>& postset(int t) const { return postset_.at(t); }

    std::size_t arc_count() const noexcept;

    Marking initial_marking;
    Marking final_marking;

    Marking marking_of(std::initializer_list<int> places) const;

    /// Places with no incoming arcs / no outgoing arcs.
    std::vector<int> source_places() const;
    std::vector<int> sink_places() const;

    /// Exactly one source and one sink place, marked initially/finally.
    bool is_workflow_net() const;

    /// Throws std::invalid_argument if arcs or markings are inconsistent.
    void validate() const;

    friend bool operator==(const PetriNet&, const PetriNet&) = default;

private:
    std::vector<std::string> places_;
    std::vector<NetTransition> transitions_;
    std::vector<std::vector<int>> preset_;
    std::vector<std::vector<int>> postset_;
};

bool enabled(const PetriNet& net, const Marking& m, int t);
Marking fire(const PetriNet& net, const Marking& m, int t);

/// Visible label sequences of length <= max_length that lead from the initial
/// to the final marking. Each run may contain at most max_silent silent firings.
std::set<std::vector<std::string>> language(const PetriNet& net, std::size_t max_length,
                                            std::size_t max_silent = 16);

/// Graphviz description: places as circles, transitions as boxes, silent
/// transitions filled. Node ids follow insertion order.
std::string to_dot(const PetriNet& net);
void export_dot(const PetriNet& net, const std::filesystem::path& path);

nlohmann::json to_json(const PetriNet& net);
PetriNet net_from_json(const nlohmann::json& j);

void save_net(const PetriNet& net, const std::filesystem::path& path);
PetriNet load_net(const std::filesystem::path& path);

} // namespace checkmine
