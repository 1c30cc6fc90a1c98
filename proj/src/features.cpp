#include "checkmine/features.hpp"

#include <charconv>
#include <deque>
#include <set>
#include <stdexcept>

namespace checkmine {

namespace {

[[noreturn]] void malformed(std::string_view what, std::string_view text)
{
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view s, std::string_view what)
{
    s = trim(s);
    if (s.size() > 1 && s.front() == '+')
        s.remove_prefix(1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        malformed(what, s);
    return v;
}

// Minimal cursor for the label grammar.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void expect(char c)
    {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c)
            malformed("label", text_);
        ++pos_;
    }

    int integer()
    {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
            ++pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
            ++pos_;
        return parse_int(text_.substr(start, pos_ - start), "label");
    }

    std::string_view quoted()
    {
        expect('"');
        const std::size_t end = text_.find('"', pos_);
        if (end == std::string_view::npos)
            malformed("label", text_);
        const auto out = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        return out;
    }

    bool done()
    {
        skip_space();
        return pos_ == text_.size();
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && text_[pos_] == ' ')
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string horizontal_name(Horizontal h) { return h == Horizontal::Right ? "right" : "left"; }
std::string vertical_name(Vertical v) { return v == Vertical::Up ? "up" : "down"; }

} // namespace

DirectionMove abstract_move(Square from, Square to)
{
    if (from == to)
        throw std::invalid_argument("abstract_move: origin equals destination");
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;
    DirectionMove m;
    m.horizontal = dx > 0 ? Horizontal::Right : dx < 0 ? Horizontal::Left : Horizontal::None;
    m.vertical = dy > 0 ? Vertical::Up : dy < 0 ? Vertical::Down : Vertical::None;
    return m;
}

std::string to_string(const Movement& m)
{
    if (const auto* d = std::get_if<DirectionMove>(&m)) {
        std::string out = "(";
        if (d->horizontal != Horizontal::None)
            out += horizontal_name(d->horizontal);
        if (d->vertical != Vertical::None) {
            if (d->horizontal != Horizontal::None)
                out += ',';
            out += vertical_name(d->vertical);
        }
        return out + ")";
    }
    if (const auto* d = std::get_if<DistanceDelta>(&m)) {
        if (!d->value)
            return "(d=inf)";
        return "(d=" + std::string(*d->value > 0 ? "+" : "") + std::to_string(*d->value) + ")";
    }
    return "()";
}

Movement parse_movement(std::string_view text)
{
    text = trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        malformed("movement", text);
    const std::string_view body = text.substr(1, text.size() - 2);
    if (body.empty())
        return std::monostate{};
    if (body.starts_with("d=")) {
        const auto v = body.substr(2);
        if (v == "inf")
            return DistanceDelta{std::nullopt};
        return DistanceDelta{parse_int(v, "movement")};
    }

    DirectionMove d;
    const auto comma = body.find(',');
    const auto first = trim(body.substr(0, comma));
    const auto second = comma == std::string_view::npos ? std::string_view{} : trim(body.substr(comma + 1));

    auto assign = [&](std::string_view tok, bool second_slot) {
        if (tok == "right" || tok == "left") {
            if (second_slot || d.horizontal != Horizontal::None)
                malformed("movement", text);
            d.horizontal = tok == "right" ? Horizontal::Right : Horizontal::Left;
        } else if (tok == "up" || tok == "down") {
            if (d.vertical != Vertical::None)
                malformed("movement", text);
            d.vertical = tok == "up" ? Vertical::Up : Vertical::Down;
        } else {
            malformed("movement", text);
        }
    };
    assign(first, false);
    if (comma != std::string_view::npos) {
        if (d.horizontal == Horizontal::None)
            malformed("movement", text);
        assign(second, true);
    }
    return d;
}

Transition transition_of(const StepRecord& step)
{
    return {{step.last_turn_enemy_piece_id, step.last_turn_enemy_movement},
            {step.piece_id, step.move},
            step.reward};
}

std::string format_context(const DecisionContext& c)
{
    return "(" + std::to_string(c.last_id) + ",\"" + to_string(c.last_move) + "\")";
}

std::string format_action(const Action& a)
{
    return "(" + std::to_string(a.piece_id) + ",\"" + to_string(a.move) + "\")";
}

std::string format_label(const Transition& t)
{
    return "(" + format_context(t.context) + "," + format_action(t.action) + "," +
           std::to_string(t.reward) + ")";
}

namespace {

std::pair<int, Movement> parse_pair(Cursor& cur)
{
    cur.expect('(');
    const int id = cur.integer();
    cur.expect(',');
    Movement m = parse_movement(cur.quoted());
    cur.expect(')');
    return {id, m};
}

} // namespace

DecisionContext parse_context(std::string_view text)
{
    Cursor cur(trim(text));
    auto [id, m] = parse_pair(cur);
    if (!cur.done())
        malformed("context", text);
    return {id, m};
}

Action parse_action(std::string_view text)
{
    Cursor cur(trim(text));
    auto [id, m] = parse_pair(cur);
    if (!cur.done())
        malformed("action", text);
    return {id, m};
}

Transition parse_label(std::string_view label)
{
    Cursor cur(label);
    cur.expect('(');
    auto [last_id, last_move] = parse_pair(cur);
    cur.expect(',');
    auto [piece_id, move] = parse_pair(cur);
    cur.expect(',');
    const int reward = cur.integer();
    cur.expect(')');
    if (!cur.done())
        malformed("label", label);
    return {{last_id, last_move}, {piece_id, move}, reward};
}

int bfs_min_distance(const GameBoard& /*board*/, std::span<const Square> sources,
                     std::span<const Square> targets)
{
    const std::set<Square> target_set(targets.begin(), targets.end());
    std::deque<Square> queue(sources.begin(), sources.end());
    std::set<Square> visited;
    constexpr int dirs[4][2] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};

    int level = 0;
    while (!queue.empty()) {
        const std::size_t width = queue.size();
        for (std::size_t i = 0; i < width; ++i) {
            const Square s = queue.front();
            queue.pop_front();
            if (target_set.contains(s))
                return level;
            for (const auto& d : dirs) {
                const Square n{s.x + d[0], s.y + d[1]};
                if (on_board(n) && visited.insert(n).second)
                    queue.push_back(n);
            }
        }
        ++level;
    }
    return kUnreachable;
}

int red_white_distance(const GameBoard& board)
{
    std::vector<Square> white;
    std::vector<Square> red;
    for (const auto& p : board.pieces(Color::White))
        white.push_back(p.pos);
    for (const auto& p : board.pieces(Color::Red))
        red.push_back(p.pos);
    return bfs_min_distance(board, white, red);
}

} // namespace checkmine
