#include "checkmine/petri_net.hpp"

#include "checkmine/event_log.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace checkmine {

int PetriNet::add_place(std::string name)
{
    places_.push_back(std::move(name));
    initial_marking.push_back(0);
    final_marking.push_back(0);
    return static_cast<int>(places_.size()) - 1;
}

int PetriNet::add_transition(std::string name, std::optional<std::string> label)
{
    transitions_.push_back({std::move(name), std::move(label)});
    preset_.emplace_back();
    postset_.emplace_back();
    return static_cast<int>(transitions_.size()) - 1;
}

void PetriNet::add_arc_place_to_transition(int place, int transition)
{
    if (place < 0 || place >= static_cast<int>(places_.size()))
        throw std::invalid_argument("arc references unknown place " + std::to_string(place));
    auto& pre = preset_.at(transition);
    if (std::find(pre.begin(), pre.end(), place) == pre.end())
        pre.push_back(place);
}

void PetriNet::add_arc_transition_to_place(int transition, int place)
{
    if (place < 0 || place >= static_cast<int>(places_.size()))
        throw std::invalid_argument("arc references unknown place " + std::to_string(place));
    auto& post = postset_.at(transition);
    if (std::find(post.begin(), post.end(), place) == post.end())
        post.push_back(place);
}

std::size_t PetriNet::arc_count() const noexcept
{
    std::size_t n = 0;
    for (std::size_t t = 0; t < transitions_.size(); ++t)
        n += preset_[t].size() + postset_[t].size();
    return n;
}

Marking PetriNet::marking_of(std::initializer_list<int> places) const
{
    Marking m(places_.size(), 0);
    for (const int p : places)
        ++m.at(p);
    return m;
}

std::vector<int> PetriNet::source_places() const
{
    std::vector<bool> has_in(places_.size(), false);
    for (const auto& post : postset_)
        for (const int p : post)
            has_in[p] = true;
    std::vector<int> out;
    for (std::size_t p = 0; p < places_.size(); ++p)
        if (!has_in[p])
            out.push_back(static_cast<int>(p));
    return out;
}

std::vector<int> PetriNet::sink_places() const
{
    std::vector<bool> has_out(places_.size(), false);
    for (const auto& pre : preset_)
        for (const int p : pre)
            has_out[p] = true;
    std::vector<int> out;
    for (std::size_t p = 0; p < places_.size(); ++p)
        if (!has_out[p])
            out.push_back(static_cast<int>(p));
    return out;
}

bool PetriNet::is_workflow_net() const
{
    const auto sources = source_places();
    const auto sinks = sink_places();
    if (sources.size() != 1 || sinks.size() != 1)
        return false;
    return initial_marking == marking_of({sources[0]}) && final_marking == marking_of({sinks[0]});
}

void PetriNet::validate() const
{
    const auto np = static_cast<int>(places_.size());
    for (std::size_t t = 0; t < transitions_.size(); ++t) {
        for (const int p : preset_[t])
            if (p < 0 || p >= np)
                throw std::invalid_argument("arc references unknown place");
        for (const int p : postset_[t])
            if (p < 0 || p >= np)
                throw std::invalid_argument("arc references unknown place");
    }
    if (initial_marking.size() != places_.size() || final_marking.size() != places_.size())
        throw std::invalid_argument("marking size does not match place count");
    auto nonempty = [](const Marking& m) {
        return std::any_of(m.begin(), m.end(), [](int k) { return k > 0; });
    };
    if (!nonempty(initial_marking) || !nonempty(final_marking))
        throw std::invalid_argument("initial and final markings must be nonempty");
}

bool enabled(const PetriNet& net, const Marking& m, int t)
{
    for (const int p : net.preset(t))
        if (m[p] < 1)
            return false;
    return true;
}

Marking fire(const PetriNet& net, const Marking& m, int t)
{
    Marking next = m;
    for (const int p : net.preset(t))
        --next[p];
    for (const int p : net.postset(t))
        ++next[p];
    return next;
}

std::set<std::vector<std::string>> language(const PetriNet& net, std::size_t max_length,
                                            std::size_t max_silent)
{
    struct State {
        Marking marking;
        std::vector<std::string> word;
        std::size_t silent;
    };
    std::set<std::vector<std::string>> words;
    std::set<std::pair<Marking, std::vector<std::string>>> seen;
    std::deque<State> queue;
    queue.push_back({net.initial_marking, {}, 0});
    seen.insert({net.initial_marking, {}});

    const auto nt = static_cast<int>(net.transitions().size());
    while (!queue.empty()) {
        State s = std::move(queue.front());
        queue.pop_front();
        if (s.marking == net.final_marking)
            words.insert(s.word);
        for (int t = 0; t < nt; ++t) {
            if (!enabled(net, s.marking, t))
                continue;
            const auto& tr = net.transitions()[t];
            State next{fire(net, s.marking, t), s.word, s.silent};
            if (tr.silent()) {
                if (next.silent == max_silent)
                    continue;
                ++next.silent;
            } else {
                if (next.word.size() == max_length)
                    continue;
                next.word.push_back(*tr.label);
            }
            if (seen.insert({next.marking, next.word}).second)
                queue.push_back(std::move(next));
        }
    }
    return words;
}

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (const char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string to_dot(const PetriNet& net)
{
    std::ostringstream os;
    os << "digraph petri_net {\n  rankdir=LR;\n";
    for (std::size_t p = 0; p < net.places().size(); ++p) {
        os << "  p" << p << " [shape=circle,label=\"" << dot_escape(net.places()[p]) << "\"";
        if (net.initial_marking[p] > 0)
            os << ",style=bold";
        if (net.final_marking[p] > 0)
            os << ",peripheries=2";
        os << "];\n";
    }
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        const auto& tr = net.transitions()[t];
        if (tr.silent())
            os << "  t" << t << " [shape=box,style=filled,fillcolor=black,label=\"\"];\n";
        else
            os << "  t" << t << " [shape=box,label=\"" << dot_escape(*tr.label) << "\"];\n";
    }
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        for (const int p : net.preset(static_cast<int>(t)))
            os << "  p" << p << " -> t" << t << ";\n";
        for (const int p : net.postset(static_cast<int>(t)))
            os << "  t" << t << " -> p" << p << ";\n";
    }
    os << "}\n";
    return os.str();
}

void export_dot(const PetriNet& net, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << to_dot(net);
    if (!os)
        throw IoError("write failed for '" + path.string() + "'");
}

nlohmann::json to_json(const PetriNet& net)
{
    nlohmann::json j;
    j["places"] = net.places();
    auto& ts = j["transitions"] = nlohmann::json::array();
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
        const auto& tr = net.transitions()[t];
        ts.push_back({{"name", tr.name},
                      {"label", tr.label ? nlohmann::json(*tr.label) : nlohmann::json(nullptr)},
                      {"in", net.preset(static_cast<int>(t))},
                      {"out", net.postset(static_cast<int>(t))}});
    }
    j["initial_marking"] = net.initial_marking;
    j["final_marking"] = net.final_marking;
    return j;
}

PetriNet net_from_json(const nlohmann::json& j)
{
    PetriNet net;
    for (const auto& p : j.at("places"))
        net.add_place(p.get<std::string>());
    for (const auto& tj : j.at("transitions")) {
        std::optional<std::string> label;
        if (!tj.at("label").is_null())
            label = tj.at("label").get<std::string>();
        const int t = net.add_transition(tj.at("name").get<std::string>(), label);
        for (const auto& p : tj.at("in"))
            net.add_arc_place_to_transition(p.get<int>(), t);
        for (const auto& p : tj.at("out"))
            net.add_arc_transition_to_place(t, p.get<int>());
    }
    net.initial_marking = j.at("initial_marking").get<Marking>();
    net.final_marking = j.at("final_marking").get<Marking>();
    net.validate();
    return net;
}

void save_net(const PetriNet& net, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << to_json(net).dump(2) << '\n';
    if (!os)
        throw IoError("write failed for '" + path.string() + "'");
}

PetriNet load_net(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path.string() + "' for reading");
    try {
        return net_from_json(nlohmann::json::parse(is));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("'" + path.string() + "': " + e.what());
    }
}

} // namespace checkmine
