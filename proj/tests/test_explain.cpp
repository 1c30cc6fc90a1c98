#include "checkmine/explain.hpp"

#include "checkmine/discovery.hpp"

#include <doctest.h>

using namespace checkmine;

namespace {

constexpr DirectionMove LU{Horizontal::Left, Vertical::Up};
constexpr DirectionMove LD{Horizontal::Left, Vertical::Down};
constexpr DirectionMove RU{Horizontal::Right, Vertical::Up};
constexpr DirectionMove RD{Horizontal::Right, Vertical::Down};

DecisionContext ctx(int id, Movement m) { return {id, m}; }
DecisionContext opening() { return {-1, std::monostate{}}; }

std::string label(DecisionContext c, int id, Movement m, int reward)
{
    return format_label({c, {id, m}, reward});
}

// Red-side cases reproducing the first three layers of a discovered model:
// three opening moves, two immediate captures in layer 2 and a capture in
// layer 3 that follows (2, (left,down)).
EventLog red_log()
{
    EventLog log;
    log.add_case(1, {label(opening(), 2, LD, 0), label(ctx(3, RU), 1, LU, 7)});
    log.add_case(2, {label(opening(), 2, LU, 0), label(ctx(1, LD), 2, LU, 7)});
    log.add_case(3, {label(opening(), 3, LD, 0), label(ctx(3, RD), 2, LD, 0), label(ctx(2, LD), 1, LU, 7)});
    log.add_case(4, {label(opening(), 2, LD, 0), label(ctx(1, RD), 3, RU, 0), label(ctx(1, LU), 1, LD, 0)});
    log.add_case(5, {label(opening(), 2, LU, 0), label(ctx(3, RU), 3, RU, 0)});
    return log;
}

} // namespace

TEST_CASE("layers hold the k-th event of every case")
{
    const EventLog log = red_log();
    const LayeredView view = layered_view(log);
    CHECK(view.layer_count() == 3);
    CHECK(view.event_count() == log.event_count());
    CHECK(view.layer(1).size() == 5);
    CHECK(view.layer(2).size() == 5);
    CHECK(view.layer(3).size() == 2);
    for (std::size_t k = 1; k <= view.layer_count(); ++k)
        for (const auto& e : view.layer(static_cast<int>(k)))
            CHECK(format_label(e.transition) == log.cases().at(e.case_id)[k - 1].label);
    CHECK_THROWS_AS(view.layer(0), std::out_of_range);
    CHECK_THROWS_AS(view.layer(4), std::out_of_range);
    CHECK_THROWS_AS(layered_view(EventLog{}), std::invalid_argument);
}

TEST_CASE("an immediate reward is recommended with its reason")
{
    const LayeredView view = layered_view(red_log());
    const auto r = recommend(view, 2, ctx(3, RU));
    CHECK(r.kind == Justification::ImmediateReward);
    CHECK(r.best().action == Action{1, LU});
    CHECK(r.best().reward == 7);
    REQUIRE(r.ranked.size() == 2);
    CHECK(r.ranked[1].action == Action{3, RU});
    CHECK(explain_text(r) ==
          "When the enemy piece 3 moves (right,up) in the last turn, we recommend selecting piece 1 and moving it "
          "(left,up) because it will cause either an enemy piece to be captured or the current piece to be "
          "crowned (7 reward points).");

    const auto other = recommend(view, 2, ctx(1, LD));
    CHECK(other.best().action == Action{2, LU});
    CHECK(other.kind == Justification::ImmediateReward);
}

TEST_CASE("a zero-reward action is justified by a chained future reward")
{
    const LayeredView view = layered_view(red_log());
    const auto r = recommend(view, 2, ctx(3, RD));
    CHECK(r.kind == Justification::FutureReward);
    CHECK(r.best().action == Action{2, LD});
    REQUIRE(r.best().future.has_value());
    CHECK(r.best().future->layer == 3);
    CHECK(r.best().future->transition == Transition{ctx(2, LD), {1, LU}, 7});
    CHECK(explain_text(r).find("layer 3 transition") != std::string::npos);

    ExplainOptions blind;
    blind.lookahead = 0;
    const auto b = recommend(view, 2, ctx(3, RD), blind);
    CHECK(b.kind == Justification::NoReward);
    CHECK_FALSE(b.best().future.has_value());
}

TEST_CASE("opening moves list every first-layer action")
{
    const LayeredView view = layered_view(red_log());
    const auto r = recommend(view, 1, opening());
    REQUIRE(r.ranked.size() == 3);
    // Nothing chains from the opening moves, so first-seen order decides.
    CHECK(r.kind == Justification::NoReward);
    CHECK(r.ranked[0].action == Action{2, LD});
    CHECK(r.ranked[1].action == Action{2, LU});
    CHECK(r.ranked[2].action == Action{3, LD});
    CHECK(explain_text(r).rfind("As the first player", 0) == 0);
}

TEST_CASE("future support prefers actions whose reward comes sooner")
{
    EventLog log;
    const DecisionContext c = ctx(5, LU);
    log.add_case(1, {label(c, 1, LD, 0), label(ctx(1, LD), 4, RU, 0), label(ctx(4, RU), 2, LU, 7)});
    log.add_case(2, {label(c, 2, RD, 0), label(ctx(2, RD), 3, RU, 14)});
    log.add_case(3, {label(c, 3, LU, 0)});
    const auto r = recommend(layered_view(log), 1, c);
    REQUIRE(r.ranked.size() == 3);
    CHECK(r.ranked[0].action == Action{2, RD});
    CHECK(r.ranked[0].future->layer == 2);
    CHECK(r.ranked[1].action == Action{1, LD});
    CHECK(r.ranked[1].future->layer == 3);
    CHECK_FALSE(r.ranked[2].future.has_value());
}

TEST_CASE("why-not compares an alternative against the recommendation")
{
    const LayeredView view = layered_view(red_log());
    const auto w = why_not(view, 2, ctx(3, RU), {3, RU});
    CHECK(w.rejected);
    CHECK(w.reward_gap == 7);
    CHECK(explain_text(w) ==
          "We do not recommend (3,\"(right,up)\"): reward 0 vs recommended 7, and no chaining future reward within "
          "2 layers.");
    const auto j = to_json(w);
    CHECK(j["rejected"] == true);
    CHECK(j["reward_gap"] == 7);

    const auto self = why_not(view, 2, ctx(3, RU), {1, LU});
    CHECK_FALSE(self.rejected);
    CHECK(self.reward_gap == 0);
}

TEST_CASE("every ranked alternative is either the best or rejected with a reason")
{
    const LayeredView view = layered_view(red_log());
    for (int layer = 1; layer <= static_cast<int>(view.layer_count()); ++layer) {
        for (const auto& e : view.layer(layer)) {
            const auto r = recommend(view, layer, e.transition.context);
            CHECK(std::is_sorted(r.ranked.begin(), r.ranked.end(),
                                 [](const RankedAction& a, const RankedAction& b) { return a.reward > b.reward; }));
            for (const auto& alt : r.ranked) {
                const auto w = why_not(view, layer, e.transition.context, alt.action);
                CHECK(w.reward_gap >= 0);
                if (alt.reward < r.best().reward || (r.best().future && !alt.future))
                    CHECK(w.rejected);
                if (alt.action == r.best().action)
                    CHECK_FALSE(w.rejected);
            }
        }
    }
}

TEST_CASE("queries outside the observations raise NoObservation")
{
    const LayeredView view = layered_view(red_log());
    CHECK_THROWS_AS(recommend(view, 2, ctx(9, LU)), NoObservation);
    CHECK_THROWS_AS(why_not(view, 2, ctx(3, RU), {2, RD}), NoObservation);
    CHECK_THROWS_AS(recommend(view, 7, ctx(3, RU)), std::out_of_range);
}

TEST_CASE("json output carries the ranking and justification")
{
    const auto j = to_json(recommend(layered_view(red_log()), 2, ctx(3, RD)));
    CHECK(j["justification"] == "future-reward");
    CHECK(j["recommended"]["piece_id"] == 2);
    CHECK(j["recommended"]["move"] == "(left,down)");
    CHECK(j["recommended"]["future"]["layer"] == 3);
    CHECK(j["context"]["last_id"] == 3);
}

TEST_CASE("the explainer only answers for a fitting model")
{
    const EventLog log = red_log();
    const Explainer fits(log, tree_to_net(inductive_miner(log)));
    REQUIRE(fits.fitting());
    CHECK(fits.recommend(2, ctx(3, RU)).best().reward == 7);

    PetriNet only_first;
    const int src = only_first.add_place("source");
    const int snk = only_first.add_place("sink");
    const int t = only_first.add_transition("t1", log.cases().at(1)[0].label);
    only_first.add_arc_place_to_transition(src, t);
    only_first.add_arc_transition_to_place(t, snk);
    only_first.initial_marking = only_first.marking_of({src});
    only_first.final_marking = only_first.marking_of({snk});
    const Explainer misfit(log, only_first);
    CHECK_FALSE(misfit.fitting());
    CHECK_THROWS_AS(misfit.recommend(2, ctx(3, RU)), ModelNotFitting);
    CHECK_THROWS_AS(misfit.why_not(2, ctx(3, RU), {3, RU}), ModelNotFitting);
}
