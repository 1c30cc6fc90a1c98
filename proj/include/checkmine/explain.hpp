#pragma once

// Post-hoc answers read off a fitting model's event log:
//   Q1 "Why do you recommend this action?"        -> recommend
//   Q2 "What do you recommend in possible futures?" -> recommend at a later layer
//   Q3 "Why don't you recommend this alternative?"  -> why_not

#include "checkmine/conformance.hpp"
#include "checkmine/event_log.hpp"
#include "checkmine/features.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace checkmine {

/// Nothing in the log matches the queried layer/context/action.
class NoObservation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A recommendation was requested from a model that does not fit its log.
class ModelNotFitting : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LayerEntry {
    int case_id = 0;
    Transition transition;
};

/// Layer k (1-based) holds the k-th event of every case, in case order.
class LayeredView {
public:
    explicit LayeredView(std::vector<std::vector<LayerEntry>> layers) : layers_(std::move(layers)) {}

    std::size_t layer_count() const noexcept { return layers_.size(); }
    /// Throws std::out_of_range outside 1..layer_count().
    const std::vector<LayerEntry>& layer(int k) const;
    std::size_t event_count() const noexcept;

private:
    std::vector<std::vector<LayerEntry>> layers_;
};

/// Throws std::invalid_argument for an empty log or a malformed label.
LayeredView layered_view(const EventLog& log);

struct ExplainOptions {
    /// How many layers past the queried one a future reward may come from.
    int lookahead = 2;
};

/// A positive-reward transition reached by chaining from a candidate action.
struct FutureSupport {
    int layer = 0;
    Transition transition;
};

struct RankedAction {
    Action action;
    int reward = 0;
    std::optional<FutureSupport> future;
};

enum class Justification { ImmediateReward, FutureReward, NoReward };

std::string to_string(Justification j);

struct Recommendation {
    int layer = 0;
    DecisionContext context;
    /// Reward descending, then earliest future support, then first observation.
    std::vector<RankedAction> ranked;
    Justification kind = Justification::NoReward;

    const RankedAction& best() const { return ranked.front(); }
};

/// Distinct (action, reward) pairs observed at `layer` under `context`, ranked.
/// Throws std::out_of_range for a bad layer and NoObservation when the context
/// does not occur at that layer.
Recommendation recommend(const LayeredView& view, int layer, const DecisionContext& context,
                         const ExplainOptions& opts = {});

struct WhyNot {
    Recommendation recommendation;
    RankedAction alternative;
    /// Recommended reward minus alternative reward; never negative.
    int reward_gap = 0;
    bool rejected = false;
};

/// Throws NoObservation when `alternative` was not taken at that layer/context.
WhyNot why_not(const LayeredView& view, int layer, const DecisionContext& context, const Action& alternative,
               const ExplainOptions& opts = {});

std::string explain_text(const Recommendation& r);
std::string explain_text(const WhyNot& w, const ExplainOptions& opts = {});

nlohmann::json to_json(const Recommendation& r);
nlohmann::json to_json(const WhyNot& w);

/// Binds a log to the net mined from it and only answers queries when the
/// net fits the log.
class Explainer {
public:
    Explainer(const EventLog& log, const PetriNet& net, int workers = 0, ExplainOptions opts = {});

    const FitnessReport& report() const noexcept { return report_; }
    bool fitting() const noexcept { return classify_fitting(report_) == Fitting::Fitting; }
    const LayeredView& view() const noexcept { return view_; }

    /// Throw ModelNotFitting unless fitting().
    Recommendation recommend(int layer, const DecisionContext& context) const;
    WhyNot why_not(int layer, const DecisionContext& context, const Action& alternative) const;

private:
    void require_fitting() const;

    FitnessReport report_;
    LayeredView view_;
    ExplainOptions opts_;
};

} // namespace checkmine
