#include "checkmine/conformance.hpp"

#include "checkmine/parallel.hpp"
#include "csv.hpp"
#include "simplex.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace checkmine {

std::size_t AlignmentResult::count(MoveKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(moves.begin(), moves.end(), [&](const AlignmentMove& m) { return m.kind == kind; }));
}

namespace {

using Clock = std::chrono::steady_clock;

struct StateKey {
    std::size_t pos;
    Marking marking;

    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const
    {
        std::size_t h = k.pos;
        boost::hash_range(h, k.marking.begin(), k.marking.end());
        return h;
    }
};

// LP relaxation of the extended marking equation for the remaining alignment:
// model firings x_t, synchronous firings y_t and log moves z_a must turn the
// current marking into the final one and consume the rest of the trace.
class MarkingEquation {
public:
    MarkingEquation(std::span<const std::string> trace, const PetriNet& net) : net_(net)
    {
        std::map<std::string, int> label_index;
        for (const auto& a : trace)
            label_index.try_emplace(a, static_cast<int>(label_index.size()));
        labels_ = static_cast<int>(label_index.size());
        event_label_.reserve(trace.size());
        for (const auto& a : trace)
            event_label_.push_back(label_index[a]);

        transitions_ = static_cast<int>(net.transitions().size());
        sync_var_.assign(transitions_, -1);
        int next = transitions_;
        for (int t = 0; t < transitions_; ++t) {
            const auto& label = net.transitions()[t].label;
            if (label && label_index.contains(*label))
                sync_var_[t] = next++;
        }
        first_log_var_ = next;

        places_ = static_cast<int>(net.places().size());
        problem_.rows = places_ + labels_;
        problem_.cols = first_log_var_ + labels_;
        problem_.a.assign(static_cast<std::size_t>(problem_.rows) * problem_.cols, 0.0);
        problem_.c.assign(problem_.cols, 0.0);
        for (int t = 0; t < transitions_; ++t) {
            for (const int p : net.preset(t)) {
                problem_.at(p, t) -= 1.0;
                if (sync_var_[t] >= 0)
                    problem_.at(p, sync_var_[t]) -= 1.0;
            }
            for (const int p : net.postset(t)) {
                problem_.at(p, t) += 1.0;
                if (sync_var_[t] >= 0)
                    problem_.at(p, sync_var_[t]) += 1.0;
            }
            if (!net.transitions()[t].silent())
                problem_.c[t] = 1.0;
            if (sync_var_[t] >= 0)
                problem_.at(places_ + label_index[*net.transitions()[t].label], sync_var_[t]) = 1.0;
        }
        for (int a = 0; a < labels_; ++a) {
            problem_.at(places_ + a, first_log_var_ + a) = 1.0;
            problem_.c[first_log_var_ + a] = 1.0;
        }

        // remaining_[pos][a] = occurrences of label a in trace[pos..].
        remaining_.assign(trace.size() + 1, std::vector<int>(labels_, 0));
        for (std::size_t i = trace.size(); i-- > 0;) {
            remaining_[i] = remaining_[i + 1];
            ++remaining_[i][event_label_[i]];
        }
    }

    int model_var(int t) const { return t; }
    int sync_var(int t) const { return sync_var_[t]; }
    int log_var(std::size_t pos) const { return first_log_var_ + event_label_[pos]; }

    std::optional<lp::Solution> solve(std::size_t pos, const Marking& m) const
    {
        lp::Problem p = problem_;
        p.b.resize(p.rows);
        for (int i = 0; i < places_; ++i)
            p.b[i] = net_.final_marking[i] - m[i];
        for (int a = 0; a < labels_; ++a)
            p.b[places_ + a] = remaining_[pos][a];
        return lp::solve(p);
    }

private:
    const PetriNet& net_;
    lp::Problem problem_;
    int places_ = 0;
    int transitions_ = 0;
    int labels_ = 0;
    int first_log_var_ = 0;
    std::vector<int> sync_var_;
    std::vector<int> event_label_;
    std::vector<std::vector<int>> remaining_;
};

int bound_of(const lp::Solution& s) { return static_cast<int>(std::ceil(s.objective - 1e-6)); }

struct SearchNode {
    StateKey key;
    int g = 0;
    int h = 0;
    bool exact = false;
    bool closed = false;
    std::size_t parent;
    AlignmentMove move;
    /// LP solution behind an exact h, kept while the node is open.
    std::vector<double> solution;
};

struct QueueEntry {
    int f;
    std::size_t pos;
    std::size_t id;

    // Lowest f first, then the state furthest along the trace, then creation order.
    bool operator<(const QueueEntry& o) const
    {
        if (f != o.f)
            return f > o.f;
        if (pos != o.pos)
            return pos < o.pos;
        return id > o.id;
    }
};

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

// A* over the synchronous product. h is the marking-equation bound, which is
// consistent, so a closed state is never reopened. A child inherits an exact
// bound when its move has value >= 1 in the parent's LP solution; otherwise it
// gets the weaker parent bound and its LP is solved when it is dequeued.
AlignmentResult search(std::span<const std::string> trace, const PetriNet& net, const AlignmentOptions& opts)
{
    const auto start = Clock::now();
    if (net.initial_marking.size() != net.places().size() || net.final_marking.size() != net.places().size())
        throw std::invalid_argument("optimal_alignment: marking size does not match place count");

    std::optional<MarkingEquation> equation;
    if (opts.heuristic)
        equation.emplace(trace, net);

    std::vector<SearchNode> nodes;
    std::unordered_map<StateKey, std::size_t, StateKeyHash> index;
    std::priority_queue<QueueEntry> open;

    {
        SearchNode root{{0, net.initial_marking}, 0, 0, true, false, kNoParent, {}, {}};
        if (equation) {
            const auto sol = equation->solve(0, net.initial_marking);
            if (!sol)
                throw ModelUnsound("optimal_alignment: final marking is unreachable");
            root.h = bound_of(*sol);
            root.solution = sol->x;
        }
        index.emplace(root.key, 0);
        open.push({root.h, 0, 0});
        nodes.push_back(std::move(root));
    }

    const auto nt = static_cast<int>(net.transitions().size());
    std::size_t explored = 0;

    auto relax = [&](std::size_t from, StateKey key, int cost, AlignmentMove move, int var) {
        const SearchNode& parent = nodes[from];
        const int g = parent.g + cost;
        int h = std::max(0, parent.h - cost);
        bool exact = !equation;
        std::vector<double> solution;
        if (equation && parent.exact && var >= 0 && parent.solution[var] >= 1.0 - 1e-6) {
            exact = true;
            solution = parent.solution;
            solution[var] -= 1.0;
        }

        auto [it, inserted] = index.try_emplace(key, nodes.size());
        if (inserted) {
            nodes.push_back({std::move(key), g, h, exact, false, from, std::move(move), std::move(solution)});
        } else {
            SearchNode& n = nodes[it->second];
            if (n.closed || n.g <= g)
                return;
            n.g = g;
            n.parent = from;
            n.move = std::move(move);
            if (exact && !n.exact) {
                n.h = h;
                n.exact = true;
                n.solution = std::move(solution);
            } else if (!n.exact) {
                n.h = std::max(n.h, h);
            }
        }
        const SearchNode& n = nodes[it->second];
        open.push({n.g + n.h, n.key.pos, it->second});
    };

    while (!open.empty()) {
        const QueueEntry top = open.top();
        open.pop();
        SearchNode& node = nodes[top.id];
        if (node.closed || node.g + node.h != top.f)
            continue;

        if (!node.exact) {
            const auto sol = equation->solve(node.key.pos, node.key.marking);
            if (!sol) {
                node.closed = true; // no completion exists from here
                continue;
            }
            node.exact = true;
            node.solution = sol->x;
            const int h = bound_of(*sol);
            if (h > node.h) {
                node.h = h;
                open.push({node.g + node.h, node.key.pos, top.id});
                continue;
            }
        }

        node.closed = true;
        if (++explored > opts.max_states)
            throw SearchLimitExceeded("optimal_alignment: more than " + std::to_string(opts.max_states) +
                                      " states explored");

        const StateKey key = node.key;
        const int g = node.g;
        if (key.pos == trace.size() && key.marking == net.final_marking) {
            AlignmentResult result;
            result.raw_cost = g;
            result.states_explored = explored;
            for (std::size_t at = top.id; nodes[at].parent != kNoParent; at = nodes[at].parent)
                result.moves.push_back(nodes[at].move);
            std::reverse(result.moves.begin(), result.moves.end());
            result.calc_time = Clock::now() - start;
            return result;
        }

        if (key.pos < trace.size())
            relax(top.id, {key.pos + 1, key.marking}, 1, {MoveKind::LogOnly, trace[key.pos], -1},
                  equation ? equation->log_var(key.pos) : -1);

        for (int t = 0; t < nt; ++t) {
            if (!enabled(net, key.marking, t))
                continue;
            const auto& tr = net.transitions()[t];
            Marking next = fire(net, key.marking, t);
            const int model_var = equation ? equation->model_var(t) : -1;
            if (tr.silent()) {
                relax(top.id, {key.pos, std::move(next)}, 0, {MoveKind::Silent, {}, t}, model_var);
                continue;
            }
            if (key.pos < trace.size() && *tr.label == trace[key.pos])
                relax(top.id, {key.pos + 1, next}, 0, {MoveKind::Synchronous, *tr.label, t},
                      equation ? equation->sync_var(t) : -1);
            relax(top.id, {key.pos, std::move(next)}, 1, {MoveKind::ModelOnly, *tr.label, t}, model_var);
        }
        std::vector<double>().swap(nodes[top.id].solution);
    }
    throw ModelUnsound("optimal_alignment: final marking is unreachable");
}

double approx_memory_kb(const AlignmentResult& a, std::size_t places)
{
    const double per_state = sizeof(SearchNode) + places * sizeof(int) + 2 * sizeof(void*);
    return static_cast<double>(a.states_explored) * per_state / 1024.0;
}

struct Variant {
    Trace trace;
    std::size_t multiplicity = 0;
};

std::vector<Variant> variants_of(const EventLog& log)
{
    std::map<Trace, std::size_t> counts;
    std::vector<Trace> order;
    for (auto& t : log.traces()) {
        auto [it, inserted] = counts.try_emplace(t, 0);
        if (inserted)
            order.push_back(t);
        ++it->second;
    }
    std::vector<Variant> out;
    out.reserve(order.size());
    for (auto& t : order) {
        const std::size_t m = counts[t];
        out.push_back({std::move(t), m});
    }
    return out;
}

template <class AlignAll>
FitnessReport aggregate(const EventLog& log, const PetriNet& net, const AlignmentOptions& opts,
                        AlignAll&& align_all)
{
    if (log.empty())
        throw std::invalid_argument("fitness_metrics: empty log");
    net.validate();

    const auto pre_start = Clock::now();
    const int model_cost = shortest_model_path(net, opts);
    const auto variants = variants_of(log);
    const std::chrono::duration<double, std::milli> preprocess = Clock::now() - pre_start;

    std::vector<AlignmentResult> results(variants.size());
    align_all(variants, results);

    FitnessReport r;
    r.trace_fitness = r.move_model_fitness = r.move_log_fitness = 0.0;
    r.preprocess_time_ms = preprocess.count();
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto m = static_cast<double>(variants[i].multiplicity);
        const auto& a = results[i];
        const TraceMetrics tm = trace_metrics(a, variants[i].trace.size(), model_cost);
        r.trace_fitness += m * tm.trace_fitness;
        r.move_model_fitness += m * tm.move_model_fitness;
        r.move_log_fitness += m * tm.move_log_fitness;
        r.raw_fitness_cost += m * a.raw_cost;
        r.trace_length += m * static_cast<double>(variants[i].trace.size());
        r.num_states += m * static_cast<double>(a.states_explored);
        r.calc_time_ms += m * a.calc_time.count();
        r.approx_memory_kb = std::max(r.approx_memory_kb, approx_memory_kb(a, net.places().size()));
    }
    const auto n = static_cast<double>(log.case_count());
    r.traces = log.case_count();
    for (double* v : {&r.trace_fitness, &r.move_model_fitness, &r.move_log_fitness, &r.raw_fitness_cost,
                      &r.trace_length, &r.num_states, &r.calc_time_ms})
        *v /= n;
    return r;
}

std::string fixed(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << v;
    return os.str();
}

} // namespace

AlignmentResult optimal_alignment(std::span<const std::string> trace, const PetriNet& net,
                                  const AlignmentOptions& opts)
{
    return search(trace, net, opts);
}

int shortest_model_path(const PetriNet& net, const AlignmentOptions& opts)
{
    return search({}, net, opts).raw_cost;
}

TraceMetrics trace_metrics(const AlignmentResult& a, std::size_t trace_length, int model_path_cost)
{
    TraceMetrics m;
    const double denom = static_cast<double>(trace_length) + model_path_cost;
    m.trace_fitness = denom > 0 ? 1.0 - a.raw_cost / denom : 1.0;

    const auto log_moves = static_cast<double>(a.count(MoveKind::LogOnly));
    m.move_log_fitness = trace_length > 0 ? 1.0 - log_moves / static_cast<double>(trace_length) : 1.0;

    const auto model_moves = static_cast<double>(a.count(MoveKind::ModelOnly));
    const auto sync_moves = static_cast<double>(a.count(MoveKind::Synchronous));
    m.move_model_fitness = model_moves + sync_moves > 0 ? 1.0 - model_moves / (model_moves + sync_moves) : 1.0;
    return m;
}

FitnessReport fitness_metrics(const EventLog& log, const PetriNet& net, int workers,
                              const AlignmentOptions& opts)
{
    return aggregate(log, net, opts, [&](const std::vector<Variant>& vs, std::vector<AlignmentResult>& out) {
        parallel_for(vs.size(), workers, [&](std::size_t i) { out[i] = optimal_alignment(vs[i].trace, net, opts); });
    });
}

FitnessReport fitness_metrics_serial(const EventLog& log, const PetriNet& net, const AlignmentOptions& opts)
{
    return aggregate(log, net, opts, [&](const std::vector<Variant>& vs, std::vector<AlignmentResult>& out) {
        for (std::size_t i = 0; i < vs.size(); ++i)
            out[i] = optimal_alignment(vs[i].trace, net, opts);
    });
}

Fitting classify_fitting(const FitnessReport& report)
{
    auto perfect = [](double v) { return std::abs(v - 1.0) <= kFittingTolerance; };
    return perfect(report.trace_fitness) && perfect(report.move_log_fitness) && perfect(report.move_model_fitness)
               ? Fitting::Fitting
               : Fitting::NonFitting;
}

std::string to_string(Fitting f) { return f == Fitting::Fitting ? "fitting" : "non-fitting"; }

void write_report_csv(std::ostream& os, std::span<const NamedReport> reports)
{
    os << kReportHeader << '\n';
    for (const auto& [model, r] : reports)
        csv::write_row(os, {model, fixed(r.calc_time_ms), fixed(r.num_states), fixed(r.trace_fitness),
                            fixed(r.raw_fitness_cost), fixed(r.move_model_fitness), fixed(r.preprocess_time_ms),
                            fixed(r.move_log_fitness), fixed(r.trace_length), fixed(r.approx_memory_kb)});
}

void export_report_csv(std::span<const NamedReport> reports, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_report_csv(os, reports);
    if (!os)
        throw IoError("write failed for '" + path.string() + "'");
}

} // namespace checkmine
