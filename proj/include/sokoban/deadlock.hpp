#pragma once

#include <deque>
#include <vector>

#include "sokoban/state.hpp"

namespace sokoban {

// Floor cells from which a lone box can never be brought to any goal.
class DeadSquares {
public:
    DeadSquares() = default;
    DeadSquares(const Grid& grid, std::vector<std::uint8_t> dead)
        : width_(grid.width()), dead_(std::move(dead)) {}

    bool is_dead(Position p) const {
        return dead_[static_cast<std::size_t>(p.row) * width_ + p.col] != 0;
    }

    std::vector<Position> cells(const Grid& grid) const {
        std::vector<Position> out;
        for (int r = 0; r < grid.height(); ++r)
            for (int c = 0; c < grid.width(); ++c)
                if (grid.is_floor({r, c}) && is_dead({r, c})) out.push_back({r, c});
        return out;
    }

private:
    int width_ = 0;
    std::vector<std::uint8_t> dead_;
};

// Reverse pull-reachability from every goal: a box on cell q can be pulled to
// the adjacent cell p when p and the cell beyond p are both floor. Cells the
// pull closure never reaches cannot deliver a box to any goal.
inline DeadSquares compute_dead_squares(const Grid& grid) {
    std::vector<std::uint8_t> safe(grid.cell_count(), 0);
    std::deque<Position> queue;
    for (const Position& g : grid.goals()) {
        safe[grid.cell_index(g)] = 1;
        queue.push_back(g);
    }
    while (!queue.empty()) {
        Position q = queue.front();
        queue.pop_front();
        for (Direction d : kAllDirections) {
            Position delta = direction_delta(d);
            Position p{q.row - delta.row, q.col - delta.col};
            Position beyond{q.row - 2 * delta.row, q.col - 2 * delta.col};
            if (!grid.is_floor(p) || !grid.is_floor(beyond)) continue;
            if (safe[grid.cell_index(p)]) continue;
            safe[grid.cell_index(p)] = 1;
            queue.push_back(p);
        }
    }
    std::vector<std::uint8_t> dead(grid.cell_count(), 0);
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c) {
            Position p{r, c};
            if (grid.is_floor(p) && !safe[grid.cell_index(p)]) dead[grid.cell_index(p)] = 1;
        }
    return DeadSquares(grid, std::move(dead));
}

namespace detail {

// 2x2 freeze: four cells all box-or-wall with at least one box off goal.
inline bool frozen_block(const State& s, const Grid& grid, Position anchor) {
    bool any_box_off_goal = false;
    for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc) {
            Position p{anchor.row + dr, anchor.col + dc};
            if (s.has_box(p)) {
                if (!grid.is_goal(p)) any_box_off_goal = true;
            } else if (grid.is_floor(p)) {
                return false;
            }
        }
    return any_box_off_goal;
}

}  // namespace detail

// True when some non-goal box sits on a dead square, or some 2x2 block of
// boxes and walls freezes a box off goal. Sound for the bundled corpus:
// certified against exhaustive search (no flagged state has a solution).
inline bool is_deadlocked(const State& s, const Grid& grid, const DeadSquares& dead) {
    for (const Position& b : s.boxes) {
        if (!grid.is_goal(b) && dead.is_dead(b)) return true;
        for (int dr = -1; dr <= 0; ++dr)
            for (int dc = -1; dc <= 0; ++dc)
                if (detail::frozen_block(s, grid, {b.row + dr, b.col + dc})) return true;
    }
    return false;
}

}  // namespace sokoban
