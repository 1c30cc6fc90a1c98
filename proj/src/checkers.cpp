#include "checkmine/checkers.hpp"

#include <algorithm>
#include <sstream>

namespace checkmine {

namespace {

struct Dir {
    int dx;
    int dy;
};

int forward_dy(Color c) noexcept { return c == Color::Red ? 1 : -1; }

int far_row(Color c) noexcept { return c == Color::Red ? 7 : 0; }

// Forward-left, forward-right, then the backward pair for kings.
std::vector<Dir> directions(Color c, bool king)
{
    const int f = forward_dy(c);
    std::vector<Dir> dirs{{-1, f}, {1, f}};
    if (king) {
        dirs.push_back({-1, -f});
        dirs.push_back({1, -f});
    }
    return dirs;
}

Square step(Square s, Dir d, int n = 1) { return {s.x + n * d.dx, s.y + n * d.dy}; }

struct JumpState {
    Square origin;
    Square at;
    std::vector<int> captured;
    std::vector<Square> captured_at;
};

bool captured_square(const JumpState& st, Square s)
{
    return std::find(st.captured_at.begin(), st.captured_at.end(), s) != st.captured_at.end();
}

void expand_jumps(const GameBoard& board, const GamePiece& piece, const RewardConfig& cfg,
                  JumpState& st, std::vector<ConcreteMove>& out)
{
    bool extended = false;
    for (const Dir d : directions(piece.color, piece.king)) {
        const Square over = step(st.at, d);
        const Square land = step(st.at, d, 2);
        if (!on_board(land))
            continue;
        const auto& victim = board.at(over);
        if (!victim || victim->color == piece.color || captured_square(st, over))
            continue;
        const bool land_free = (!board.at(land) || land == st.origin) && !captured_square(st, land);
        if (!land_free)
            continue;

        extended = true;
        const Square prev = st.at;
        st.at = land;
        st.captured.push_back(victim->id);
        st.captured_at.push_back(over);

        if (!piece.king && land.y == far_row(piece.color)) {
            ConcreteMove m;
            m.piece_id = piece.id;
            m.from = st.origin;
            m.to = land;
            m.captured_ids = st.captured;
            m.crowned = true;
            m.reward = cfg.capture_points * static_cast<int>(m.captured_ids.size()) + cfg.crown_points;
            out.push_back(std::move(m));
        } else {
            expand_jumps(board, piece, cfg, st, out);
        }

        st.captured.pop_back();
        st.captured_at.pop_back();
        st.at = prev;
    }

    if (!extended && !st.captured.empty()) {
        ConcreteMove m;
        m.piece_id = piece.id;
        m.from = st.origin;
        m.to = st.at;
        m.captured_ids = st.captured;
        m.crowned = false;
        m.reward = cfg.capture_points * static_cast<int>(m.captured_ids.size());
        out.push_back(std::move(m));
    }
}

} // namespace

std::string to_string(Color c) { return c == Color::Red ? "RED" : "WHITE"; }

GameBoard::GameBoard(int pieces_per_side) : pieces_per_side_(pieces_per_side)
{
    if (pieces_per_side < 1 || pieces_per_side > 12)
        throw std::invalid_argument("pieces_per_side must be in 1..12, got " +
                                    std::to_string(pieces_per_side));
}

std::size_t GameBoard::index(Square s)
{
    if (!on_board(s))
        throw std::invalid_argument("square off board: (" + std::to_string(s.x) + "," +
                                    std::to_string(s.y) + ")");
    return static_cast<std::size_t>(s.y * 8 + s.x);
}

void GameBoard::place(const GamePiece& piece)
{
    const auto i = index(piece.pos);
    if (!is_dark(piece.pos))
        throw std::invalid_argument("pieces must stand on dark squares");
    if (cells_[i])
        throw std::invalid_argument("square already occupied");
    if (piece.id < 1 || piece.id > pieces_per_side_)
        throw std::invalid_argument("piece id out of range: " + std::to_string(piece.id));
    if (find(piece.color, piece.id))
        throw std::invalid_argument("duplicate piece id " + std::to_string(piece.id));
    cells_[i] = piece;
}

void GameBoard::remove(Square s) { cells_[index(s)].reset(); }

std::vector<GamePiece> GameBoard::pieces(Color c) const
{
    std::vector<GamePiece> out;
    for (const auto& cell : cells_)
        if (cell && cell->color == c)
            out.push_back(*cell);
    std::sort(out.begin(), out.end(),
              [](const GamePiece& a, const GamePiece& b) { return a.id < b.id; });
    return out;
}

std::optional<GamePiece> GameBoard::find(Color c, int id) const
{
    for (const auto& cell : cells_)
        if (cell && cell->color == c && cell->id == id)
            return cell;
    return std::nullopt;
}

int GameBoard::count(Color c) const noexcept
{
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [c](const auto& cell) {
        return cell && cell->color == c;
    }));
}

int GameBoard::kings(Color c) const noexcept
{
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [c](const auto& cell) {
        return cell && cell->color == c && cell->king;
    }));
}

GameBoard initial_board(int pieces_per_side)
{
    GameBoard board(pieces_per_side);
    int placed = 0;
    for (int row = 0; row < 8 && placed < pieces_per_side; ++row) {
        for (int x = 0; x < 8 && placed < pieces_per_side; ++x) {
            const Square red{x, row};
            if (!is_dark(red))
                continue;
            ++placed;
            board.place({Color::Red, placed, red, false});
        }
    }
    // White mirrors red through the board centre; ids still run left-to-right
    // within each row, starting from White's own edge.
    std::vector<Square> white;
    for (const auto& p : board.pieces(Color::Red))
        white.push_back({7 - p.pos.x, 7 - p.pos.y});
    std::sort(white.begin(), white.end(), [](Square a, Square b) {
        return a.y != b.y ? a.y > b.y : a.x < b.x;
    });
    for (std::size_t i = 0; i < white.size(); ++i)
        board.place({Color::White, static_cast<int>(i) + 1, white[i], false});
    return board;
}

std::vector<ConcreteMove> legal_moves(const GameBoard& board, Color color, const RewardConfig& cfg)
{
    std::vector<ConcreteMove> jumps;
    std::vector<ConcreteMove> steps;

    for (const auto& piece : board.pieces(color)) {
        JumpState st{piece.pos, piece.pos, {}, {}};
        expand_jumps(board, piece, cfg, st, jumps);

        for (const Dir d : directions(color, piece.king)) {
            const Square to = step(piece.pos, d);
            if (!on_board(to) || board.at(to))
                continue;
            ConcreteMove m;
            m.piece_id = piece.id;
            m.from = piece.pos;
            m.to = to;
            m.crowned = !piece.king && to.y == far_row(color);
            m.reward = m.crowned ? cfg.crown_points : 0;
            steps.push_back(std::move(m));
        }
    }

    if (cfg.forced_capture && !jumps.empty())
        return jumps;

    // Keep per-piece grouping: merge by piece id, jumps before steps.
    std::vector<ConcreteMove> all;
    all.reserve(jumps.size() + steps.size());
    auto j = jumps.begin();
    auto s = steps.begin();
    while (j != jumps.end() || s != steps.end()) {
        const int id = std::min(j != jumps.end() ? j->piece_id : 1 << 30,
                                s != steps.end() ? s->piece_id : 1 << 30);
        while (j != jumps.end() && j->piece_id == id)
            all.push_back(std::move(*j++));
        while (s != steps.end() && s->piece_id == id)
            all.push_back(std::move(*s++));
    }
    return all;
}

GameBoard apply_legal_move(const GameBoard& board, const ConcreteMove& move)
{
    GameBoard next = board;
    GamePiece piece = *board.at(move.from);
    const Color enemy = opponent(piece.color);
    for (const int id : move.captured_ids)
        next.remove(board.find(enemy, id)->pos);
    next.remove(move.from);
    piece.pos = move.to;
    piece.king = piece.king || move.crowned;
    next.place(piece);
    return next;
}

GameBoard apply_move(const GameBoard& board, const ConcreteMove& move, const RewardConfig& cfg)
{
    if (!on_board(move.from) || !board.at(move.from))
        throw RuleViolation("no piece on the origin square");
    const Color mover = board.at(move.from)->color;
    const auto moves = legal_moves(board, mover, cfg);
    if (std::find(moves.begin(), moves.end(), move) == moves.end()) {
        std::ostringstream os;
        os << "illegal move for " << to_string(mover) << " piece " << move.piece_id << ": ("
           << move.from.x << "," << move.from.y << ") -> (" << move.to.x << "," << move.to.y << ")";
        throw RuleViolation(os.str());
    }
    return apply_legal_move(board, move);
}

std::optional<Color> winner(const GameBoard& board, Color to_move)
{
    if (board.count(to_move) == 0)
        return opponent(to_move);
    RewardConfig permissive;
    permissive.forced_capture = false;
    if (legal_moves(board, to_move, permissive).empty())
        return opponent(to_move);
    return std::nullopt;
}

double evaluate(const GameBoard& board, Color perspective, double king_weight)
{
    const Color enemy = opponent(perspective);
    return (board.count(perspective) - board.count(enemy)) +
           king_weight * (board.kings(perspective) - board.kings(enemy));
}

std::string render(const GameBoard& board)
{
    std::ostringstream os;
    for (int y = 7; y >= 0; --y) {
        os << y << ' ';
        for (int x = 0; x < 8; ++x) {
            const auto& cell = board.at({x, y});
            if (!cell) {
                os << (is_dark({x, y}) ? " . " : "   ");
                continue;
            }
            const char c = cell->color == Color::Red ? 'r' : 'w';
            os << ' ' << static_cast<char>(cell->king ? c - 32 : c) << cell->id;
        }
        os << '\n';
    }
    os << "   0  1  2  3  4  5  6  7\n";
    return os.str();
}

} // namespace checkmine
