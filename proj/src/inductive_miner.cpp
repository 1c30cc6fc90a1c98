#include "checkmine/discovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace checkmine {

ProcessTree ProcessTree::activity(std::string label)
{
    return {Kind::Activity, std::move(label), {}};
}

ProcessTree ProcessTree::silent() { return {Kind::Silent, {}, {}}; }

ProcessTree ProcessTree::node(Kind kind, std::vector<ProcessTree> children)
{
    if (kind == Kind::Activity || kind == Kind::Silent)
        throw std::invalid_argument("ProcessTree::node: leaves take no children");
    if (kind == Kind::Loop && children.size() < 2)
        throw std::invalid_argument("ProcessTree::node: loop needs a body and a redo part");
    if (children.empty())
        throw std::invalid_argument("ProcessTree::node: operator without children");
    return {kind, {}, std::move(children)};
}

std::string ProcessTree::to_string() const
{
    switch (kind) {
    case Kind::Activity:
        return label;
    case Kind::Silent:
        return "tau";
    default:
        break;
    }
    const char* op = kind == Kind::Sequence ? "->" : kind == Kind::Exclusive ? "X"
                                                 : kind == Kind::Parallel  ? "+"
                                                                           : "*";
    std::string out = std::string(op) + "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i)
            out += ", ";
        out += children[i].to_string();
    }
    return out + ")";
}

namespace {

using IntTrace = std::vector<int>;
using IntLog = std::vector<IntTrace>;
using Kind = ProcessTree::Kind;

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (b < a)
            std::swap(a, b);
        parent_[b] = a;
        return true;
    }

    /// Groups ordered by their smallest member.
    std::vector<std::vector<int>> groups()
    {
        std::map<std::size_t, std::vector<int>> by_root;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            by_root[find(i)].push_back(static_cast<int>(i));
        std::vector<std::vector<int>> out;
        for (auto& [root, members] : by_root)
            out.push_back(std::move(members));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::size_t> parent_;
};

// Directly-follows graph over local indices 0..n-1 of a sublog's alphabet.
struct LocalDfg {
    std::vector<int> alphabet; // local index -> global activity id
    std::vector<std::vector<char>> edge;
    std::vector<char> start;
    std::vector<char> end;

    std::size_t size() const { return alphabet.size(); }
};

LocalDfg build_dfg(const IntLog& log, std::vector<int>& local_of)
{
    LocalDfg g;
    for (const auto& t : log)
        g.alphabet.insert(g.alphabet.end(), t.begin(), t.end());
    std::sort(g.alphabet.begin(), g.alphabet.end());
    g.alphabet.erase(std::unique(g.alphabet.begin(), g.alphabet.end()), g.alphabet.end());
    for (std::size_t i = 0; i < g.alphabet.size(); ++i)
        local_of[g.alphabet[i]] = static_cast<int>(i);

    const std::size_t n = g.size();
    g.edge.assign(n, std::vector<char>(n, 0));
    g.start.assign(n, 0);
    g.end.assign(n, 0);
    for (const auto& t : log) {
        if (t.empty())
            continue;
        g.start[local_of[t.front()]] = 1;
        g.end[local_of[t.back()]] = 1;
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            g.edge[local_of[t[i]]][local_of[t[i + 1]]] = 1;
    }
    return g;
}

std::vector<std::vector<char>> reachability(const LocalDfg& g)
{
    const std::size_t n = g.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (g.edge[u][v] && !reach[s][v]) {
                    reach[s][v] = 1;
                    stack.push_back(v);
                }
        }
    }
    return reach;
}

using Partition = std::vector<std::vector<int>>; // groups of local indices

std::optional<Partition> exclusive_cut(const LocalDfg& g)
{
    UnionFind uf(g.size());
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b)
            if (g.edge[a][b])
                uf.unite(a, b);
    auto groups = uf.groups();
    if (groups.size() < 2)
        return std::nullopt;
    return groups;
}

std::optional<Partition> sequence_cut(const LocalDfg& g)
{
    const std::size_t n = g.size();
    const auto reach = reachability(g);

    // Merge strongly connected and mutually unreachable activities, then keep
    // merging groups until every pair is ordered in exactly one direction.
    UnionFind uf(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (reach[a][b] == reach[b][a])
                uf.unite(a, b);

    Partition groups;
    for (bool changed = true; changed;) {
        changed = false;
        groups = uf.groups();
        const std::size_t k = groups.size();
        std::vector<std::vector<char>> greach(k, std::vector<char>(k, 0));
        for (std::size_t x = 0; x < k; ++x)
            for (std::size_t y = 0; y < k; ++y)
                for (const int a : groups[x])
                    for (const int b : groups[y])
                        if (reach[a][b])
                            greach[x][y] = 1;
        for (std::size_t x = 0; x < k && !changed; ++x)
            for (std::size_t y = x + 1; y < k && !changed; ++y)
                if (greach[x][y] == greach[y][x])
                    changed = uf.unite(groups[x].front(), groups[y].front());
    }
    if (groups.size() < 2)
        return std::nullopt;

    // Order groups by how many other groups they reach (a chain in a valid cut).
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t x = 0; x < groups.size(); ++x) {
        int reaches = 0;
        for (std::size_t y = 0; y < groups.size(); ++y) {
            if (x == y)
                continue;
            bool any = false;
            for (const int a : groups[x])
                for (const int b : groups[y])
                    any = any || reach[a][b];
            reaches += any;
        }
        order.emplace_back(-reaches, x);
    }
    std::sort(order.begin(), order.end());
    Partition sorted;
    std::vector<int> position(n);
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.push_back(groups[order[i].second]);
        for (const int a : sorted.back())
            position[a] = static_cast<int>(i);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.edge[a][b] && position[a] > position[b])
                return std::nullopt;
    return sorted;
}

std::optional<Partition> parallel_cut(const LocalDfg& g)
{
    const std::size_t n = g.size();
    UnionFind uf(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!(g.edge[a][b] && g.edge[b][a]))
                uf.unite(a, b);
    auto groups = uf.groups();
    if (groups.size() < 2)
        return std::nullopt;

    auto complete = [&](const std::vector<int>& part) {
        const bool has_start = std::any_of(part.begin(), part.end(), [&](int a) { return g.start[a]; });
        const bool has_end = std::any_of(part.begin(), part.end(), [&](int a) { return g.end[a]; });
        return has_start && has_end;
    };
    Partition good;
    std::vector<int> deficient;
    for (auto& part : groups) {
        if (complete(part))
            good.push_back(std::move(part));
        else
            deficient.insert(deficient.end(), part.begin(), part.end());
    }
    if (good.empty())
        return std::nullopt;
    if (!deficient.empty()) {
        good.front().insert(good.front().end(), deficient.begin(), deficient.end());
        std::sort(good.front().begin(), good.front().end());
    }
    if (good.size() < 2)
        return std::nullopt;
    return good;
}

std::optional<Partition> loop_cut(const LocalDfg& g)
{
    const std::size_t n = g.size();
    std::vector<char> body(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        body[a] = g.start[a] || g.end[a];

    UnionFind uf(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.edge[a][b] && !body[a] && !body[b])
                uf.unite(a, b);

    std::vector<int> body_part;
    Partition redo;
    for (auto& comp : uf.groups()) {
        if (body[comp.front()]) {
            body_part.insert(body_part.end(), comp.begin(), comp.end());
            continue;
        }
        bool ok = true;
        for (const int c : comp) {
            bool entered = false;
            bool exits = false;
            for (std::size_t a = 0; a < n; ++a) {
                if (!body[a])
                    continue;
                if (g.edge[a][c]) {
                    entered = true;
                    ok = ok && g.end[a];
                }
                if (g.edge[c][a]) {
                    exits = true;
                    ok = ok && g.start[a];
                }
            }
            // An activity entered from one end activity is entered from all of them;
            // likewise for exits to start activities.
            for (std::size_t a = 0; a < n && ok; ++a) {
                if (entered && g.end[a] && !g.edge[a][c])
                    ok = false;
                if (exits && g.start[a] && !g.edge[c][a])
                    ok = false;
            }
        }
        if (ok)
            redo.push_back(std::move(comp));
        else
            body_part.insert(body_part.end(), comp.begin(), comp.end());
    }
    if (redo.empty())
        return std::nullopt;
    std::sort(body_part.begin(), body_part.end());
    Partition out{std::move(body_part)};
    out.insert(out.end(), redo.begin(), redo.end());
    return out;
}

class Miner {
public:
    explicit Miner(std::vector<std::string> names)
        : names_(std::move(names)), local_of_(names_.size(), -1)
    {
    }

    ProcessTree mine(const IntLog& log)
    {
        if (log.empty() || std::all_of(log.begin(), log.end(), [](const auto& t) { return t.empty(); }))
            return ProcessTree::silent();

        if (std::any_of(log.begin(), log.end(), [](const auto& t) { return t.empty(); })) {
            IntLog rest;
            for (const auto& t : log)
                if (!t.empty())
                    rest.push_back(t);
            return ProcessTree::node(Kind::Exclusive, {ProcessTree::silent(), mine(rest)});
        }

        const LocalDfg g = build_dfg(log, local_of_);
        if (g.size() == 1) {
            const auto leaf = ProcessTree::activity(names_[g.alphabet.front()]);
            if (std::all_of(log.begin(), log.end(), [](const auto& t) { return t.size() == 1; }))
                return leaf;
            return ProcessTree::node(Kind::Loop, {leaf, ProcessTree::silent()});
        }

        if (auto cut = exclusive_cut(g))
            return split_exclusive(log, g, *cut);
        if (auto cut = sequence_cut(g))
            return split_sequence(log, g, *cut);
        if (auto cut = parallel_cut(g))
            return split_parallel(log, g, *cut);
        if (auto cut = loop_cut(g))
            return split_loop(log, g, *cut);

        std::vector<ProcessTree> children{ProcessTree::silent()};
        for (const int a : g.alphabet)
            children.push_back(ProcessTree::activity(names_[a]));
        return ProcessTree::node(Kind::Loop, std::move(children));
    }

private:
    std::vector<int> part_of(const LocalDfg& g, const Partition& cut) const
    {
        std::vector<int> part(names_.size(), -1);
        for (std::size_t i = 0; i < cut.size(); ++i)
            for (const int local : cut[i])
                part[g.alphabet[local]] = static_cast<int>(i);
        return part;
    }

    ProcessTree split_exclusive(const IntLog& log, const LocalDfg& g, const Partition& cut)
    {
        const auto part = part_of(g, cut);
        std::vector<IntLog> sub(cut.size());
        for (const auto& t : log)
            sub[part[t.front()]].push_back(t);
        return recurse(Kind::Exclusive, sub);
    }

    ProcessTree split_sequence(const IntLog& log, const LocalDfg& g, const Partition& cut)
    {
        const auto part = part_of(g, cut);
        std::vector<IntLog> sub(cut.size());
        for (const auto& t : log) {
            std::vector<IntTrace> pieces(cut.size());
            for (const int a : t)
                pieces[part[a]].push_back(a);
            for (std::size_t i = 0; i < cut.size(); ++i)
                sub[i].push_back(std::move(pieces[i]));
        }
        return recurse(Kind::Sequence, sub);
    }

    ProcessTree split_parallel(const IntLog& log, const LocalDfg& g, const Partition& cut)
    {
        // Projection onto each part; same shape as the sequence split.
        const auto part = part_of(g, cut);
        std::vector<IntLog> sub(cut.size());
        for (const auto& t : log) {
            std::vector<IntTrace> pieces(cut.size());
            for (const int a : t)
                pieces[part[a]].push_back(a);
            for (std::size_t i = 0; i < cut.size(); ++i)
                sub[i].push_back(std::move(pieces[i]));
        }
        return recurse(Kind::Parallel, sub);
    }

    ProcessTree split_loop(const IntLog& log, const LocalDfg& g, const Partition& cut)
    {
        // Each maximal run inside one part is a separate trace of that part.
        const auto part = part_of(g, cut);
        std::vector<IntLog> sub(cut.size());
        for (const auto& t : log) {
            IntTrace run;
            int current = part[t.front()];
            for (const int a : t) {
                if (part[a] != current) {
                    sub[current].push_back(std::move(run));
                    run.clear();
                    current = part[a];
                }
                run.push_back(a);
            }
            sub[current].push_back(std::move(run));
        }
        return recurse(Kind::Loop, sub);
    }

    ProcessTree recurse(Kind kind, const std::vector<IntLog>& sublogs)
    {
        std::vector<ProcessTree> children;
        children.reserve(sublogs.size());
        for (const auto& s : sublogs)
            children.push_back(mine(s));
        return ProcessTree::node(kind, std::move(children));
    }

    std::vector<std::string> names_;
    std::vector<int> local_of_;
};

} // namespace

ProcessTree inductive_miner(std::span<const Trace> traces)
{
    if (traces.empty())
        throw std::invalid_argument("inductive_miner: empty log");
    std::map<std::string, int> ids;
    for (const auto& t : traces)
        for (const auto& a : t)
            ids.emplace(a, 0);
    std::vector<std::string> names;
    for (auto& [name, id] : ids) {
        id = static_cast<int>(names.size());
        names.push_back(name);
    }
    IntLog log;
    log.reserve(traces.size());
    for (const auto& t : traces) {
        IntTrace it;
        it.reserve(t.size());
        for (const auto& a : t)
            it.push_back(ids[a]);
        log.push_back(std::move(it));
    }
    return Miner(std::move(names)).mine(log);
}

ProcessTree inductive_miner(const EventLog& log)
{
    const auto traces = log.traces();
    return inductive_miner(traces);
}

namespace {

class NetBuilder {
public:
    PetriNet build(const ProcessTree& tree)
    {
        const int source = net_.add_place("source");
        const int sink = net_.add_place("sink");
        translate(tree, source, sink);
        net_.initial_marking = net_.marking_of({source});
        net_.final_marking = net_.marking_of({sink});
        return std::move(net_);
    }

private:
    int place() { return net_.add_place("p" + std::to_string(++places_)); }

    int silent() { return net_.add_transition("tau_" + std::to_string(++silents_), std::nullopt); }

    void connect(int in, int t, int out)
    {
        net_.add_arc_place_to_transition(in, t);
        net_.add_arc_transition_to_place(t, out);
    }

    void translate(const ProcessTree& node, int in, int out)
    {
        switch (node.kind) {
        case Kind::Activity:
            connect(in, net_.add_transition("t" + std::to_string(++visibles_), node.label), out);
            break;
        case Kind::Silent:
            connect(in, silent(), out);
            break;
        case Kind::Sequence: {
            int from = in;
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                const int to = i + 1 == node.children.size() ? out : place();
                translate(node.children[i], from, to);
                from = to;
            }
            break;
        }
        case Kind::Exclusive:
            for (const auto& child : node.children)
                translate(child, in, out);
            break;
        case Kind::Parallel: {
            const int split = silent();
            const int join = silent();
            net_.add_arc_place_to_transition(in, split);
            net_.add_arc_transition_to_place(join, out);
            for (const auto& child : node.children) {
                const int a = place();
                const int b = place();
                net_.add_arc_transition_to_place(split, a);
                net_.add_arc_place_to_transition(b, join);
                translate(child, a, b);
            }
            break;
        }
        case Kind::Loop: {
            const int head = place();
            const int tail = place();
            connect(in, silent(), head);
            translate(node.children.front(), head, tail);
            for (std::size_t i = 1; i < node.children.size(); ++i)
                translate(node.children[i], tail, head);
            connect(tail, silent(), out);
            break;
        }
        }
    }

    PetriNet net_;
    int places_ = 0;
    int silents_ = 0;
    int visibles_ = 0;
};

} // namespace

PetriNet tree_to_net(const ProcessTree& tree) { return NetBuilder{}.build(tree); }

} // namespace checkmine
