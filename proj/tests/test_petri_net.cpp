#include "checkmine/petri_net.hpp"

#include "temp_dir.hpp"

#include <doctest.h>

#include <algorithm>

using namespace checkmine;

namespace {

// source -> A -> p1 -> {B | tau} -> sink
PetriNet choice_net()
{
    PetriNet n;
    const int src = n.add_place("source");
    const int mid = n.add_place("p1");
    const int snk = n.add_place("sink");
    const int a = n.add_transition("t1", "A");
    const int b = n.add_transition("t2", "B");
    const int skip = n.add_transition("tau_1", std::nullopt);
    n.add_arc_place_to_transition(src, a);
    n.add_arc_transition_to_place(a, mid);
    for (const int t : {b, skip}) {
        n.add_arc_place_to_transition(mid, t);
        n.add_arc_transition_to_place(t, snk);
    }
    n.initial_marking = n.marking_of({src});
    n.final_marking = n.marking_of({snk});
    return n;
}

std::size_t occurrences(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE("firing moves tokens along arcs")
{
    const PetriNet n = choice_net();
    CHECK(enabled(n, n.initial_marking, 0));
    CHECK_FALSE(enabled(n, n.initial_marking, 1));
    const Marking m = fire(n, n.initial_marking, 0);
    CHECK(m == Marking{0, 1, 0});
    CHECK(fire(n, m, 2) == n.final_marking);
}

TEST_CASE("language enumerates visible words reaching the final marking")
{
    const PetriNet n = choice_net();
    using W = std::vector<std::string>;
    CHECK(language(n, 5) == std::set<W>{{"A"}, {"A", "B"}});
    CHECK(language(n, 1) == std::set<W>{{"A"}});
    CHECK(language(n, 0).empty());
}

TEST_CASE("workflow shape and validation")
{
    PetriNet n = choice_net();
    CHECK(n.source_places() == std::vector<int>{0});
    CHECK(n.sink_places() == std::vector<int>{2});
    CHECK(n.is_workflow_net());
    CHECK_NOTHROW(n.validate());
    CHECK(n.arc_count() == 6);

    n.add_place("orphan");
    n.initial_marking.back() = 0;
    CHECK_FALSE(n.is_workflow_net());
    CHECK(n.source_places().size() == 2);

    PetriNet unmarked = choice_net();
    unmarked.initial_marking = Marking(3, 0);
    CHECK_THROWS_AS(unmarked.validate(), std::invalid_argument);
    CHECK_THROWS_AS(unmarked.add_arc_place_to_transition(7, 0), std::invalid_argument);
}

TEST_CASE("json round-trip preserves the net")
{
    const PetriNet n = choice_net();
    CHECK(net_from_json(to_json(n)) == n);
    testing::TempDir dir;
    save_net(n, dir.path() / "net.json");
    CHECK(load_net(dir.path() / "net.json") == n);
    CHECK_THROWS(load_net(dir.path() / "missing.json"));
}

TEST_CASE("dot output draws places as circles and transitions as boxes")
{
    PetriNet n;
    const int p = n.add_place("in");
    const int q = n.add_place("out");
    const int t = n.add_transition("t1", "A \"quoted\"");
    n.add_arc_place_to_transition(p, t);
    n.add_arc_transition_to_place(t, q);
    n.initial_marking = n.marking_of({p});
    n.final_marking = n.marking_of({q});
    const std::string dot = to_dot(n);
    CHECK(occurrences(dot, "shape=circle") == 2);
    CHECK(occurrences(dot, "shape=box") == 1);
    CHECK(occurrences(dot, " -> ") == 2);
    CHECK(dot.find("A \\\"quoted\\\"") != std::string::npos);
    CHECK(dot.rfind("digraph", 0) == 0);

    const std::string silent = to_dot(choice_net());
    CHECK(occurrences(silent, "style=filled") >= 1);
}
