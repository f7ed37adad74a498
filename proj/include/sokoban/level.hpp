#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sokoban/geometry.hpp"

namespace sokoban {

enum class ParseErrorKind {
    UnknownCharacter,
    NoPlayer,
    MultiplePlayers,
    BoxGoalCountMismatch,
    UnenclosedBoard,
    EntityOutsideBoard,
    LevelTooLarge,
};

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::string message, Position where = {-1, -1}, char ch = '\0')
        : Error(std::move(message)), kind_(kind), where_(where), ch_(ch) {}

    ParseErrorKind kind() const { return kind_; }
    Position where() const { return where_; }
    char character() const { return ch_; }

private:
    ParseErrorKind kind_;
    Position where_;
    char ch_;
};

// Static board. Cells are canonical: everything outside the player-reachable
// region (including padding of ragged input lines) is stored as wall, so a
// grid is fully described by its floor and goal sets.
class Grid {
public:
    Grid() = default;
    Grid(int height, int width) : height_(height), width_(width), cells_(static_cast<std::size_t>(height) * width, 0) {}

    int height() const { return height_; }
    int width() const { return width_; }

    bool in_bounds(Position p) const {
        return p.row >= 0 && p.row < height_ && p.col >= 0 && p.col < width_;
    }
    bool is_floor(Position p) const { return in_bounds(p) && (cell(p) & kFloor); }
    bool is_wall(Position p) const { return !is_floor(p); }
    bool is_goal(Position p) const { return in_bounds(p) && (cell(p) & kGoal); }

    void set_floor(Position p) { cell(p) |= kFloor; }
    void set_goal(Position p) {
        cell(p) |= kGoal;
        goals_.push_back(p);
        std::sort(goals_.begin(), goals_.end());
    }

    // Goals in row-major order.
    const std::vector<Position>& goals() const { return goals_; }

    std::size_t cell_index(Position p) const {
        return static_cast<std::size_t>(p.row) * width_ + p.col;
    }
    std::size_t cell_count() const { return cells_.size(); }

    std::vector<Position> floor_cells() const {
        std::vector<Position> out;
        for (int r = 0; r < height_; ++r)
            for (int c = 0; c < width_; ++c)
                if (is_floor({r, c})) out.push_back({r, c});
        return out;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.height_ == b.height_ && a.width_ == b.width_ && a.cells_ == b.cells_;
    }

private:
    static constexpr std::uint8_t kFloor = 1;
    static constexpr std::uint8_t kGoal = 2;

    std::uint8_t& cell(Position p) { return cells_[cell_index(p)]; }
    std::uint8_t cell(Position p) const { return cells_[cell_index(p)]; }

    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> cells_;
    std::vector<Position> goals_;
};

struct Level {
    Grid grid;
    Position initial_player;
    std::vector<Position> initial_boxes;  // sorted row-major

    friend bool operator==(const Level& a, const Level& b) {
        return a.grid == b.grid && a.initial_player == b.initial_player &&
               a.initial_boxes == b.initial_boxes;
    }
};

inline constexpr int kMaxLevelDim = 64;

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    if (!cur.empty()) lines.push_back(std::move(cur));
    return lines;
}

inline bool blank(const std::string& line) {
    return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace detail

// Parses one level in XSB notation: # wall, space floor, $ box, . goal,
// * box on goal, @ player, + player on goal. Ragged lines are right-padded;
// everything outside the outer wall loop becomes wall.
inline Level parse_level(std::string_view text) {
    std::vector<std::string> lines = detail::split_lines(text);
    while (!lines.empty() && detail::blank(lines.back())) lines.pop_back();
    while (!lines.empty() && detail::blank(lines.front())) lines.erase(lines.begin());

    int height = static_cast<int>(lines.size());
    int width = 0;
    for (const auto& l : lines) width = std::max(width, static_cast<int>(l.size()));
    if (height > kMaxLevelDim || width > kMaxLevelDim)
        throw ParseError(ParseErrorKind::LevelTooLarge,
                         "level exceeds " + std::to_string(kMaxLevelDim) + "x" +
                             std::to_string(kMaxLevelDim));

    std::vector<Position> players, boxes, goals;
    std::vector<std::uint8_t> is_wall_cell(static_cast<std::size_t>(height) * width, 0);
    auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * width + c; };

    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            char ch = c < static_cast<int>(lines[r].size()) ? lines[r][c] : ' ';
            switch (ch) {
            case '#': is_wall_cell[idx(r, c)] = 1; break;
            case ' ': break;
            case '$': boxes.push_back({r, c}); break;
            case '.': goals.push_back({r, c}); break;
            case '*': boxes.push_back({r, c}); goals.push_back({r, c}); break;
            case '@': players.push_back({r, c}); break;
            case '+': players.push_back({r, c}); goals.push_back({r, c}); break;
            default:
                throw ParseError(ParseErrorKind::UnknownCharacter,
                                 std::string("unknown character '") + ch + "' at row " +
                                     std::to_string(r) + ", col " + std::to_string(c),
                                 {r, c}, ch);
            }
        }
    }
    if (players.empty()) throw ParseError(ParseErrorKind::NoPlayer, "level has no player");
    if (players.size() > 1)
        throw ParseError(ParseErrorKind::MultiplePlayers, "level has multiple players",
                         players[1]);

    // Floor = flood fill from the player through non-wall cells, ignoring boxes.
    std::vector<std::uint8_t> floor(is_wall_cell.size(), 0);
    std::vector<Position> stack{players[0]};
    while (!stack.empty()) {
        Position p = stack.back();
        stack.pop_back();
        if (p.row < 0 || p.row >= height || p.col < 0 || p.col >= width)
            throw ParseError(ParseErrorKind::UnenclosedBoard, "board is not wall-enclosed");
        if (is_wall_cell[idx(p.row, p.col)] || floor[idx(p.row, p.col)]) continue;
        if (p.row == 0 || p.row == height - 1 || p.col == 0 || p.col == width - 1)
            throw ParseError(ParseErrorKind::UnenclosedBoard,
                             "floor cell touches the text boundary at row " +
                                 std::to_string(p.row) + ", col " + std::to_string(p.col),
                             p);
        floor[idx(p.row, p.col)] = 1;
        for (Direction d : kAllDirections) stack.push_back(p + direction_delta(d));
    }

    for (const Position& b : boxes)
        if (!floor[idx(b.row, b.col)])
            throw ParseError(ParseErrorKind::EntityOutsideBoard,
                             "box outside the playable region at row " + std::to_string(b.row) +
                                 ", col " + std::to_string(b.col),
                             b, '$');
    for (const Position& g : goals)
        if (!floor[idx(g.row, g.col)])
            throw ParseError(ParseErrorKind::EntityOutsideBoard,
                             "goal outside the playable region at row " + std::to_string(g.row) +
                                 ", col " + std::to_string(g.col),
                             g, '.');
    if (boxes.size() != goals.size())
        throw ParseError(ParseErrorKind::BoxGoalCountMismatch,
                         std::to_string(boxes.size()) + " boxes vs " +
                             std::to_string(goals.size()) + " goals");

    Grid grid(height, width);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            if (floor[idx(r, c)]) grid.set_floor({r, c});
    for (const Position& g : goals) grid.set_goal(g);

    std::sort(boxes.begin(), boxes.end());
    return Level{std::move(grid), players[0], std::move(boxes)};
}

// Canonical form: exterior rendered as '#', no trailing spaces, LF separators,
// no trailing newline. parse_level(serialize_level(L)) == L.
inline std::string serialize_placement(const Grid& grid, Position player,
                                       const std::vector<Position>& boxes) {
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.height()) * (grid.width() + 1));
    for (int r = 0; r < grid.height(); ++r) {
        if (r > 0) out.push_back('\n');
        for (int c = 0; c < grid.width(); ++c) {
            Position p{r, c};
            char ch;
            if (!grid.is_floor(p)) {
                ch = '#';
            } else {
                bool goal = grid.is_goal(p);
                if (p == player) ch = goal ? '+' : '@';
                else if (std::binary_search(boxes.begin(), boxes.end(), p)) ch = goal ? '*' : '$';
                else ch = goal ? '.' : ' ';
            }
            out.push_back(ch);
        }
    }
    return out;
}

inline std::string serialize_level(const Level& level) {
    return serialize_placement(level.grid, level.initial_player, level.initial_boxes);
}

inline Level transform_level(const Level& level, Symmetry s) {
    const Grid& g = level.grid;
    int h = g.height(), w = g.width();
    bool swap = swaps_dimensions(s);
    Grid out(swap ? w : h, swap ? h : w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            Position p{r, c};
            if (!g.is_floor(p)) continue;
            Position q = transform_position(p, s, h, w);
            out.set_floor(q);
            if (g.is_goal(p)) out.set_goal(q);
        }
    }
    std::vector<Position> boxes;
    boxes.reserve(level.initial_boxes.size());
    for (const Position& b : level.initial_boxes) boxes.push_back(transform_position(b, s, h, w));
    std::sort(boxes.begin(), boxes.end());
    return Level{std::move(out), transform_position(level.initial_player, s, h, w),
                 std::move(boxes)};
}

// Splits a multi-level file on blank lines. Each chunk parses independently;
// levels are addressed 1-based by callers.
inline std::vector<std::string> split_level_chunks(std::string_view text) {
    std::vector<std::string> chunks;
    std::string cur;
    for (const std::string& line : detail::split_lines(text)) {
        if (detail::blank(line)) {
            if (!cur.empty()) chunks.push_back(std::move(cur)), cur.clear();
        } else {
            cur += line;
            cur.push_back('\n');
        }
    }
    if (!cur.empty()) chunks.push_back(std::move(cur));
    return chunks;
}

inline std::vector<Level> parse_level_collection(std::string_view text) {
    std::vector<Level> out;
    for (const std::string& chunk : split_level_chunks(text)) out.push_back(parse_level(chunk));
    return out;
}

}  // namespace sokoban
