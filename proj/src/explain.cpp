#include "checkmine/explain.hpp"

#include <algorithm>
#include <sstream>

namespace checkmine {

const std::vector<LayerEntry>& LayeredView::layer(int k) const
{
    if (k < 1 || static_cast<std::size_t>(k) > layers_.size())
        throw std::out_of_range("layer " + std::to_string(k) + " outside 1.." + std::to_string(layers_.size()));
    return layers_[static_cast<std::size_t>(k) - 1];
}

std::size_t LayeredView::event_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& l : layers_)
        n += l.size();
    return n;
}

LayeredView layered_view(const EventLog& log)
{
    if (log.empty())
        throw std::invalid_argument("layered_view: empty log");
    std::vector<std::vector<LayerEntry>> layers;
    for (const auto& [case_id, events] : log.cases()) {
        if (layers.size() < events.size())
            layers.resize(events.size());
        for (std::size_t k = 0; k < events.size(); ++k)
            layers[k].push_back({case_id, parse_label(events[k].label)});
    }
    return LayeredView(std::move(layers));
}

std::string to_string(Justification j)
{
    switch (j) {
    case Justification::ImmediateReward:
        return "immediate-reward";
    case Justification::FutureReward:
        return "future-reward";
    case Justification::NoReward:
        return "no-reward";
    }
    return "?";
}

namespace {

bool chains_from(const DecisionContext& c, const Action& a)
{
    return c.last_id == a.piece_id && c.last_move == a.move;
}

// Breadth-first over layers: entries whose context chains from the current
// frontier of actions; the first positive reward found wins.
std::optional<FutureSupport> future_support(const LayeredView& view, int layer, const Action& action, int lookahead)
{
    std::vector<Action> frontier{action};
    const int last = std::min<int>(layer + lookahead, static_cast<int>(view.layer_count()));
    for (int k = layer + 1; k <= last && !frontier.empty(); ++k) {
        std::vector<Action> next;
        for (const auto& e : view.layer(k)) {
            const auto& t = e.transition;
            if (std::none_of(frontier.begin(), frontier.end(), [&](const Action& a) { return chains_from(t.context, a); }))
                continue;
            if (t.reward > 0)
                return FutureSupport{k, t};
            if (std::find(next.begin(), next.end(), t.action) == next.end())
                next.push_back(t.action);
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

std::string describe_context(const DecisionContext& c)
{
    if (c.last_id < 0)
        return "As the first player";
    return "When the enemy piece " + std::to_string(c.last_id) + " moves " + to_string(c.last_move) +
           " in the last turn";
}

std::string describe_action(const Action& a)
{
    return "piece " + std::to_string(a.piece_id) + " and moving it " + to_string(a.move);
}

nlohmann::json context_json(const DecisionContext& c)
{
    return {{"last_id", c.last_id}, {"last_move", to_string(c.last_move)}};
}

nlohmann::json ranked_json(const RankedAction& r)
{
    nlohmann::json j{{"piece_id", r.action.piece_id}, {"move", to_string(r.action.move)}, {"reward", r.reward}};
    if (r.future)
        j["future"] = {{"layer", r.future->layer}, {"transition", format_label(r.future->transition)}};
    else
        j["future"] = nullptr;
    return j;
}

} // namespace

Recommendation recommend(const LayeredView& view, int layer, const DecisionContext& context,
                         const ExplainOptions& opts)
{
    if (opts.lookahead < 0)
        throw std::invalid_argument("recommend: negative lookahead");
    Recommendation r;
    r.layer = layer;
    r.context = context;
    for (const auto& e : view.layer(layer)) {
        const auto& t = e.transition;
        if (t.context != context)
            continue;
        const bool seen = std::any_of(r.ranked.begin(), r.ranked.end(), [&](const RankedAction& a) {
            return a.action == t.action && a.reward == t.reward;
        });
        if (!seen)
            r.ranked.push_back({t.action, t.reward, future_support(view, layer, t.action, opts.lookahead)});
    }
    if (r.ranked.empty())
        throw NoObservation("no observation of context " + format_context(context) + " at layer " +
                            std::to_string(layer));

    std::stable_sort(r.ranked.begin(), r.ranked.end(), [](const RankedAction& a, const RankedAction& b) {
        if (a.reward != b.reward)
            return a.reward > b.reward;
        if (a.future.has_value() != b.future.has_value())
            return a.future.has_value();
        return a.future && a.future->layer < b.future->layer;
    });

    const auto& best = r.best();
    r.kind = best.reward > 0 ? Justification::ImmediateReward
             : best.future   ? Justification::FutureReward
                             : Justification::NoReward;
    return r;
}

WhyNot why_not(const LayeredView& view, int layer, const DecisionContext& context, const Action& alternative,
               const ExplainOptions& opts)
{
    WhyNot w;
    w.recommendation = recommend(view, layer, context, opts);
    const auto& ranked = w.recommendation.ranked;
    const auto it = std::find_if(ranked.begin(), ranked.end(),
                                 [&](const RankedAction& a) { return a.action == alternative; });
    if (it == ranked.end())
        throw NoObservation("action " + format_action(alternative) + " was not observed under context " +
                            format_context(context) + " at layer " + std::to_string(layer));
    w.alternative = *it;
    const auto& best = w.recommendation.best();
    w.reward_gap = best.reward - it->reward;
    w.rejected = w.reward_gap > 0 || (best.future && !it->future);
    return w;
}

std::string explain_text(const Recommendation& r)
{
    const auto& best = r.best();
    std::ostringstream os;
    os << describe_context(r.context) << ", we recommend selecting " << describe_action(best.action);
    switch (r.kind) {
    case Justification::ImmediateReward:
        os << " because it will cause either an enemy piece to be captured or the current piece to be crowned ("
           << best.reward << " reward points).";
        break;
    case Justification::FutureReward:
        os << ". Even though it results in 0 reward points, the layer " << best.future->layer << " transition "
           << format_label(best.future->transition) << " can follow it, which brings future reward points.";
        break;
    case Justification::NoReward:
        os << ". No observed action earns reward points here, now or in the following layers.";
        break;
    }
    return os.str();
}

std::string explain_text(const WhyNot& w, const ExplainOptions& opts)
{
    const auto& alt = w.alternative;
    std::ostringstream os;
    os << (w.rejected ? "We do not recommend " : "We do not reject ") << format_action(alt.action) << ": reward "
       << alt.reward << " vs recommended " << w.recommendation.best().reward;
    if (!alt.future && alt.reward == 0)
        os << ", and no chaining future reward within " << opts.lookahead << " layers";
    os << '.';
    return os.str();
}

nlohmann::json to_json(const Recommendation& r)
{
    nlohmann::json ranked = nlohmann::json::array();
    for (const auto& a : r.ranked)
        ranked.push_back(ranked_json(a));
    return {{"layer", r.layer},
            {"context", context_json(r.context)},
            {"justification", to_string(r.kind)},
            {"recommended", ranked_json(r.best())},
            {"ranked", ranked},
            {"text", explain_text(r)}};
}

nlohmann::json to_json(const WhyNot& w)
{
    return {{"layer", w.recommendation.layer},
            {"context", context_json(w.recommendation.context)},
            {"alternative", ranked_json(w.alternative)},
            {"recommended", ranked_json(w.recommendation.best())},
            {"reward_gap", w.reward_gap},
            {"rejected", w.rejected},
            {"text", explain_text(w)}};
}

Explainer::Explainer(const EventLog& log, const PetriNet& net, int workers, ExplainOptions opts)
    : report_(fitness_metrics(log, net, workers)), view_(layered_view(log)), opts_(opts)
{
}

void Explainer::require_fitting() const
{
    if (!fitting())
        throw ModelNotFitting("the model does not fit its log (trace fitness " +
                              std::to_string(report_.trace_fitness) + ")");
}

Recommendation Explainer::recommend(int layer, const DecisionContext& context) const
{
    require_fitting();
    return checkmine::recommend(view_, layer, context, opts_);
}

WhyNot Explainer::why_not(int layer, const DecisionContext& context, const Action& alternative) const
{
    require_fitting();
    return checkmine::why_not(view_, layer, context, alternative, opts_);
}

} // namespace checkmine
