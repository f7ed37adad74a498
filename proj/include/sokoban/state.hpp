#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sokoban/level.hpp"

namespace sokoban {

class IllegalMoveError : public Error {
public:
    explicit IllegalMoveError(std::string message, int step = 0)
        : Error(std::move(message)), step_(step) {}

    // 1-based index into the replayed sequence; 0 when not replaying.
    int step() const { return step_; }

private:
    int step_;
};

struct State {
    Position player;
    std::vector<Position> boxes;  // kept sorted row-major

    bool has_box(Position p) const {
        return std::binary_search(boxes.begin(), boxes.end(), p);
    }

    friend bool operator==(const State&, const State&) = default;
};

inline State initial_state(const Level& level) {
    return State{level.initial_player, level.initial_boxes};
}

// Canonical encoding: player (row, col) followed by the sorted box coordinates.
// Keys are equal exactly when states are equal.
struct StateKey {
    std::vector<std::uint16_t> cells;

    friend bool operator==(const StateKey&, const StateKey&) = default;
};

inline StateKey state_key(const State& s) {
    StateKey key;
    key.cells.reserve(2 + 2 * s.boxes.size());
    key.cells.push_back(static_cast<std::uint16_t>(s.player.row));
    key.cells.push_back(static_cast<std::uint16_t>(s.player.col));
    for (const Position& b : s.boxes) {
        key.cells.push_back(static_cast<std::uint16_t>(b.row));
        key.cells.push_back(static_cast<std::uint16_t>(b.col));
    }
    return key;
}

}  // namespace sokoban

template <>
struct std::hash<sokoban::StateKey> {
    std::size_t operator()(const sokoban::StateKey& k) const noexcept {
        // FNV-1a; containers still resolve collisions by full key comparison.
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint16_t v : k.cells) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

namespace sokoban {

inline bool is_legal_move(const State& s, Direction d, const Grid& grid) {
    Position target = s.player + direction_delta(d);
    if (!grid.is_floor(target)) return false;
    if (!s.has_box(target)) return true;
    Position beyond = target + direction_delta(d);
    return grid.is_floor(beyond) && !s.has_box(beyond);
}

inline bool move_pushes(const State& s, Direction d) {
    return s.has_box(s.player + direction_delta(d));
}

// Legal moves in fixed order U, D, L, R, push flags annotated.
inline std::vector<Move> legal_moves(const State& s, const Grid& grid) {
    std::vector<Move> out;
    for (Direction d : kAllDirections)
        if (is_legal_move(s, d, grid)) out.push_back(Move{d, move_pushes(s, d)});
    return out;
}

// Advances the player one cell, pushing at most a single box; `m.pushed`
// records whether a box moved. Pull moves do not exist.
inline State apply_move(const State& s, Move& m, const Grid& grid) {
    if (!is_legal_move(s, m.dir, grid))
        throw IllegalMoveError(std::string("illegal move '") + direction_char(m.dir) + "'");
    Position target = s.player + direction_delta(m.dir);
    State next;
    next.player = target;
    next.boxes = s.boxes;
    m.pushed = false;
    if (s.has_box(target)) {
        m.pushed = true;
        Position beyond = target + direction_delta(m.dir);
        auto it = std::lower_bound(next.boxes.begin(), next.boxes.end(), target);
        *it = beyond;
        std::sort(next.boxes.begin(), next.boxes.end());
    }
    return next;
}

inline bool is_goal(const State& s, const Grid& grid) { return s.boxes == grid.goals(); }

// ASCII snapshot in level notation; render(initial_state(L)) == serialize_level(L).
inline std::string render(const State& s, const Grid& grid) {
    return serialize_placement(grid, s.player, s.boxes);
}

// Replays a transcript from the initial state. Throws IllegalMoveError with the
// 1-based step index of the offending move.
inline State replay_moves(const Level& level, const MoveSeq& moves) {
    State s = initial_state(level);
    int step = 0;
    for (Move m : moves) {
        ++step;
        if (!is_legal_move(s, m.dir, level.grid))
            throw IllegalMoveError(std::string("illegal move '") + direction_char(m.dir) +
                                       "' at step " + std::to_string(step),
                                   step);
        s = apply_move(s, m, level.grid);
    }
    return s;
}

inline bool solves(const Level& level, const MoveSeq& moves) {
    return is_goal(replay_moves(level, moves), level.grid);
}

}  // namespace sokoban
