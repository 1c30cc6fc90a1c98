#include "checkmine/event_log.hpp"

#include "csv.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <fstream>
#include <sstream>

namespace checkmine {

namespace pt = boost::property_tree;

void EventLog::add_case(int case_id, const std::vector<std::string>& labels)
{
    if (cases_.contains(case_id))
        throw std::invalid_argument("duplicate case id " + std::to_string(case_id));
    for (const auto& label : labels)
        if (label.empty())
            throw std::invalid_argument("empty event label in case " + std::to_string(case_id));
    auto& events = cases_[case_id];
    events.reserve(labels.size());
    for (const auto& label : labels) {
        events.push_back({case_id, label});
        alphabet_.insert(label);
    }
}

EventLog EventLog::from_traces(std::span<const Trace> traces)
{
    EventLog log;
    int id = 1;
    for (const auto& t : traces)
        log.add_case(id++, t);
    return log;
}

std::vector<Trace> EventLog::traces() const
{
    std::vector<Trace> out;
    out.reserve(cases_.size());
    for (const auto& [id, events] : cases_) {
        Trace t;
        t.reserve(events.size());
        for (const auto& e : events)
            t.push_back(e.label);
        out.push_back(std::move(t));
    }
    return out;
}

std::size_t EventLog::event_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& [id, events] : cases_)
        n += events.size();
    return n;
}

EventLog build_event_log(std::span<const std::pair<int, std::vector<StepRecord>>> traces)
{
    EventLog log;
    for (const auto& [episode, steps] : traces) {
        std::vector<std::string> labels;
        labels.reserve(steps.size());
        for (const auto& s : steps)
            labels.push_back(format_label(transition_of(s)));
        log.add_case(episode, labels);
    }
    return log;
}

LogFormat parse_log_format(const std::string& name)
{
    if (name == "csv")
        return LogFormat::Csv;
    if (name == "xes")
        return LogFormat::Xes;
    throw std::invalid_argument("unknown log format '" + name + "' (expected csv or xes)");
}

std::string episode_file_name(Color color, int episode)
{
    return std::string(color == Color::Red ? "red" : "white") + "_episode" +
           std::to_string(episode) + ".csv";
}

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return is;
}

void check_written(std::ofstream& os, const std::filesystem::path& path)
{
    os.flush();
    if (!os)
        throw IoError("write failed for '" + path.string() + "'");
}

std::string format_ids(const std::vector<int>& ids)
{
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(ids[i]);
    }
    return out + "]";
}

std::vector<int> parse_ids(const std::string& text)
{
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw std::invalid_argument("malformed id list '" + text + "'");
    std::vector<int> ids;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ','))
        ids.push_back(std::stoi(item));
    return ids;
}

pt::ptree::path_type attr(const std::string& name)
{
    return pt::ptree::path_type("<xmlattr>/" + name, '/');
}

pt::ptree concept_name(const std::string& value)
{
    pt::ptree s;
    s.put(attr("key"), "concept:name");
    s.put(attr("value"), value);
    return s;
}

std::optional<std::string> read_concept_name(const pt::ptree& element)
{
    for (const auto& [tag, child] : element) {
        if (tag != "string")
            continue;
        if (child.get(attr("key"), std::string{}) == "concept:name")
            return child.get(attr("value"), std::string{});
    }
    return std::nullopt;
}

void write_xes(const EventLog& log, std::ostream& os)
{
    pt::ptree xlog;
    xlog.put(attr("xes.version"), "1.0");
    xlog.put(attr("xes.features"), "nested-attributes");
    xlog.put(attr("xmlns"), "http://www.xes-standard.org/");

    pt::ptree ext;
    ext.put(attr("name"), "Concept");
    ext.put(attr("prefix"), "concept");
    ext.put(attr("uri"), "http://www.xes-standard.org/concept.xesext");
    xlog.add_child("extension", ext);

    for (const auto& [id, events] : log.cases()) {
        pt::ptree trace;
        trace.add_child("string", concept_name(std::to_string(id)));
        for (const auto& e : events) {
            pt::ptree event;
            event.add_child("string", concept_name(e.label));
            trace.add_child("event", event);
        }
        xlog.add_child("trace", trace);
    }

    pt::ptree root;
    root.add_child("log", xlog);
    pt::write_xml(os, root, pt::xml_writer_make_settings<std::string>(' ', 2));
}

EventLog read_xes(std::istream& is, const std::filesystem::path& path)
{
    pt::ptree root;
    try {
        pt::read_xml(is, root, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw IoError("'" + path.string() + "': " + e.what());
    }
    EventLog log;
    const auto xlog = root.get_child_optional("log");
    if (!xlog)
        throw IoError("'" + path.string() + "': missing <log> element");
    for (const auto& [tag, trace] : *xlog) {
        if (tag != "trace")
            continue;
        const auto name = read_concept_name(trace);
        if (!name)
            throw IoError("'" + path.string() + "': trace without concept:name");
        std::vector<std::string> labels;
        for (const auto& [etag, event] : trace) {
            if (etag != "event")
                continue;
            const auto label = read_concept_name(event);
            if (!label)
                throw IoError("'" + path.string() + "': event without concept:name");
            labels.push_back(*label);
        }
        log.add_case(std::stoi(*name), labels);
    }
    return log;
}

} // namespace

void export_episode_table(std::span<const StepRecord> trace, const std::filesystem::path& path)
{
    auto os = open_out(path);
    os << kEpisodeHeader << '\n';
    for (const auto& s : trace) {
        csv::write_row(os, {std::to_string(s.last_turn_enemy_piece_id),
                            to_string(s.last_turn_enemy_movement), std::to_string(s.piece_id),
                            to_string(s.move), format_ids(s.captured), std::to_string(s.reward)});
    }
    check_written(os, path);
}

std::vector<StepRecord> import_episode_table(const std::filesystem::path& path)
{
    auto is = open_in(path);
    const auto rows = csv::read_all(is);
    if (rows.empty())
        throw IoError("'" + path.string() + "': empty file, expected header");
    std::ostringstream header;
    csv::write_row(header, rows.front());
    if (header.str() != std::string(kEpisodeHeader) + "\n")
        throw IoError("'" + path.string() + "': unexpected header");

    std::vector<StepRecord> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 6)
            throw IoError("'" + path.string() + "': row " + std::to_string(r) + " has " +
                          std::to_string(row.size()) + " fields");
        try {
            StepRecord s;
            s.last_turn_enemy_piece_id = std::stoi(row[0]);
            s.last_turn_enemy_movement = parse_movement(row[1]);
            s.piece_id = std::stoi(row[2]);
            s.move = parse_movement(row[3]);
            s.captured = parse_ids(row[4]);
            s.reward = std::stoi(row[5]);
            out.push_back(std::move(s));
        } catch (const std::exception& e) {
            throw IoError("'" + path.string() + "': row " + std::to_string(r) + ": " + e.what());
        }
    }
    return out;
}

void export_log(const EventLog& log, const std::filesystem::path& path, LogFormat format)
{
    auto os = open_out(path);
    if (format == LogFormat::Xes) {
        write_xes(log, os);
    } else {
        os << "case_id,transition\n";
        for (const auto& [id, events] : log.cases()) {
            if (events.empty())
                csv::write_row(os, {std::to_string(id), ""});
            for (const auto& e : events)
                csv::write_row(os, {std::to_string(id), e.label});
        }
    }
    check_written(os, path);
}

EventLog import_log(const std::filesystem::path& path, LogFormat format)
{
    auto is = open_in(path);
    if (format == LogFormat::Xes)
        return read_xes(is, path);

    const auto rows = csv::read_all(is);
    if (rows.empty() || rows.front() != std::vector<std::string>{"case_id", "transition"})
        throw IoError("'" + path.string() + "': expected header case_id,transition");

    // Preserve first-seen case order; events keep file order within a case.
    std::vector<int> order;
    std::map<int, std::vector<std::string>> grouped;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 2)
            throw IoError("'" + path.string() + "': row " + std::to_string(r) + " malformed");
        int id = 0;
        try {
            id = std::stoi(row[0]);
        } catch (const std::exception&) {
            throw IoError("'" + path.string() + "': row " + std::to_string(r) + " has a non-numeric case id");
        }
        if (!grouped.contains(id))
            order.push_back(id);
        auto& labels = grouped[id];
        if (!row[1].empty())
            labels.push_back(row[1]);
    }
    EventLog log;
    for (const int id : order)
        log.add_case(id, grouped[id]);
    return log;
}

EventLog import_log(const std::filesystem::path& path)
{
    return import_log(path, path.extension() == ".xes" ? LogFormat::Xes : LogFormat::Csv);
}

} // namespace checkmine
