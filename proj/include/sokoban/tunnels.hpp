#pragma once

#include <utility>
#include <vector>

#include "sokoban/state.hpp"

namespace sokoban {

enum class Axis : std::uint8_t { Horizontal, Vertical };

// A floor cell is a horizontal-axis tunnel cell when the cells directly above
// and below are walls (boxes can only traverse it horizontally); vertical is
// symmetric. A one-cell pocket carries both axes.
class TunnelMap {
public:
    TunnelMap() = default;
    explicit TunnelMap(const Grid& grid)
        : width_(grid.width()), flags_(grid.cell_count(), 0) {
        for (int r = 0; r < grid.height(); ++r)
            for (int c = 0; c < grid.width(); ++c) {
                Position p{r, c};
                if (!grid.is_floor(p)) continue;
                std::uint8_t f = 0;
                if (grid.is_wall({r - 1, c}) && grid.is_wall({r + 1, c})) f |= kHorizontal;
                if (grid.is_wall({r, c - 1}) && grid.is_wall({r, c + 1})) f |= kVertical;
                flags_[grid.cell_index(p)] = f;
            }
    }

    bool is_tunnel(Position p, Axis axis) const {
        std::uint8_t f = flags_[static_cast<std::size_t>(p.row) * width_ + p.col];
        return axis == Axis::Horizontal ? (f & kHorizontal) : (f & kVertical);
    }

private:
    static constexpr std::uint8_t kHorizontal = 1;
    static constexpr std::uint8_t kVertical = 2;

    int width_ = 0;
    std::vector<std::uint8_t> flags_;
};

inline std::vector<std::pair<Position, Axis>> detect_tunnels(const Grid& grid) {
    TunnelMap map(grid);
    std::vector<std::pair<Position, Axis>> out;
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c) {
            Position p{r, c};
            if (!grid.is_floor(p)) continue;
            if (map.is_tunnel(p, Axis::Horizontal)) out.emplace_back(p, Axis::Horizontal);
            if (map.is_tunnel(p, Axis::Vertical)) out.emplace_back(p, Axis::Vertical);
        }
    return out;
}

constexpr Axis push_axis(Direction d) {
    return (d == Direction::Left || d == Direction::Right) ? Axis::Horizontal : Axis::Vertical;
}

struct MacroResult {
    State state;
    MoveSeq moves;  // the fully expanded transcript, every move a push
};

// Extends a pushing move through a tunnel: while the box sits off goal and the
// next cell ahead is a same-axis tunnel floor cell, unoccupied and not a goal,
// the push repeats. Falls back to the single push when the move does not enter
// a tunnel aligned with it.
inline MacroResult macro_extend(const State& s, Move push, const Grid& grid,
                                const TunnelMap& tunnels) {
    MacroResult out;
    out.state = apply_move(s, push, grid);
    out.moves.push_back(push);
    if (!push.pushed) return out;

    Position delta = direction_delta(push.dir);
    Axis axis = push_axis(push.dir);
    Position box = out.state.player + delta;
    if (!tunnels.is_tunnel(box, axis)) return out;

    while (!grid.is_goal(box)) {
        Position next = box + delta;
        if (!grid.is_floor(next) || out.state.has_box(next) || grid.is_goal(next) ||
            !tunnels.is_tunnel(next, axis))
            break;
        Move step{push.dir, false};
        out.state = apply_move(out.state, step, grid);
        out.moves.push_back(step);
        box = next;
    }
    return out;
}

}  // namespace sokoban
