#include "checkmine/discovery.hpp"

#include <algorithm>
#include <stdexcept>

namespace checkmine {

DirectlyFollowsGraph directly_follows(std::span<const Trace> traces)
{
    if (traces.empty())
        throw std::invalid_argument("directly_follows: empty log");
    DirectlyFollowsGraph g;
    for (const auto& t : traces) {
        if (t.empty()) {
            ++g.empty_traces;
            continue;
        }
        g.activities.insert(t.begin(), t.end());
        ++g.start_activities[t.front()];
        ++g.end_activities[t.back()];
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            ++g.edges[{t[i], t[i + 1]}];
    }
    return g;
}

DirectlyFollowsGraph directly_follows(const EventLog& log)
{
    const auto traces = log.traces();
    return directly_follows(traces);
}

namespace {

using Set = std::vector<int>; // sorted activity indices

struct Footprint {
    std::size_t n = 0;
    std::vector<std::vector<char>> follows;

    bool causal(int a, int b) const { return follows[a][b] && !follows[b][a]; }
    bool unrelated(int a, int b) const { return !follows[a][b] && !follows[b][a]; }
};

bool insert_sorted(Set& s, int v)
{
    const auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v)
        return false;
    s.insert(it, v);
    return true;
}

// Every (A, B) pair that passes the alpha conditions, found by growing
// single causal pairs one element at a time. Keeps only the maximal ones.
std::vector<std::pair<Set, Set>> maximal_pairs(const Footprint& fp)
{
    const int n = static_cast<int>(fp.n);
    std::set<std::pair<Set, Set>> seen;
    std::vector<std::pair<Set, Set>> stack;
    std::vector<std::pair<Set, Set>> maximal;

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (fp.causal(a, b) && fp.unrelated(a, a) && fp.unrelated(b, b)) {
                std::pair<Set, Set> p{{a}, {b}};
                if (seen.insert(p).second)
                    stack.push_back(std::move(p));
            }

    while (!stack.empty()) {
        auto [A, B] = std::move(stack.back());
        stack.pop_back();
        bool extended = false;

        for (int c = 0; c < n; ++c) {
            // Grow A with c.
            if (!std::binary_search(A.begin(), A.end(), c) && fp.unrelated(c, c) &&
                std::all_of(A.begin(), A.end(), [&](int a) { return fp.unrelated(a, c); }) &&
                std::all_of(B.begin(), B.end(), [&](int b) { return fp.causal(c, b); })) {
                extended = true;
                Set A2 = A;
                insert_sorted(A2, c);
                std::pair<Set, Set> p{std::move(A2), B};
                if (seen.insert(p).second)
                    stack.push_back(std::move(p));
            }
            // Grow B with c.
            if (!std::binary_search(B.begin(), B.end(), c) && fp.unrelated(c, c) &&
                std::all_of(B.begin(), B.end(), [&](int b) { return fp.unrelated(b, c); }) &&
                std::all_of(A.begin(), A.end(), [&](int a) { return fp.causal(a, c); })) {
                extended = true;
                Set B2 = B;
                insert_sorted(B2, c);
                std::pair<Set, Set> p{A, std::move(B2)};
                if (seen.insert(p).second)
                    stack.push_back(std::move(p));
            }
        }
        if (!extended)
            maximal.emplace_back(std::move(A), std::move(B));
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

} // namespace

PetriNet alpha_miner(std::span<const Trace> traces)
{
    const auto dfg = directly_follows(traces);
    const std::vector<std::string> acts(dfg.activities.begin(), dfg.activities.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < acts.size(); ++i)
        index[acts[i]] = static_cast<int>(i);

    Footprint fp;
    fp.n = acts.size();
    fp.follows.assign(fp.n, std::vector<char>(fp.n, 0));
    for (const auto& [edge, count] : dfg.edges)
        fp.follows[index[edge.first]][index[edge.second]] = 1;

    PetriNet net;
    const int source = net.add_place("source");
    std::vector<int> transition(acts.size());
    for (std::size_t i = 0; i < acts.size(); ++i)
        transition[i] = net.add_transition("t" + std::to_string(i), acts[i]);

    int k = 0;
    for (const auto& [A, B] : maximal_pairs(fp)) {
        const int p = net.add_place("p" + std::to_string(++k));
        for (const int a : A)
            net.add_arc_transition_to_place(transition[a], p);
        for (const int b : B)
            net.add_arc_place_to_transition(p, transition[b]);
    }
    const int sink = net.add_place("sink");
    for (const auto& [a, c] : dfg.start_activities)
        net.add_arc_place_to_transition(source, transition[index[a]]);
    for (const auto& [a, c] : dfg.end_activities)
        net.add_arc_transition_to_place(transition[index[a]], sink);

    net.initial_marking = net.marking_of({source});
    net.final_marking = net.marking_of({sink});
    return net;
}

PetriNet alpha_miner(const EventLog& log)
{
    const auto traces = log.traces();
    return alpha_miner(traces);
}

} // namespace checkmine
