#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string_view>

#include "sokoban/assignment.hpp"
#include "sokoban/state.hpp"

namespace sokoban {

enum class Metric { Euclid, Manhattan };

// The four future-cost estimators available to the A* solver.
enum class HeuristicKind { GreedyEuclid, GreedyManhattan, HungarianEuclid, HungarianManhattan };

inline double metric_distance(Position a, Position b, Metric metric) {
    double dr = a.row - b.row, dc = a.col - b.col;
    if (metric == Metric::Manhattan) return std::abs(dr) + std::abs(dc);
    return std::sqrt(dr * dr + dc * dc);
}

// Sum over boxes of the distance to the nearest goal; boxes may share goals.
inline double greedy_heuristic(const State& s, const Grid& grid, Metric metric) {
    double total = 0.0;
    for (const Position& b : s.boxes) {
        double best = std::numeric_limits<double>::infinity();
        for (const Position& g : grid.goals())
            best = std::min(best, metric_distance(b, g, metric));
        total += best;
    }
    return total;
}

inline CostMatrix build_cost_matrix(const State& s, const Grid& grid, Metric metric) {
    const auto& goals = grid.goals();
    CostMatrix m(s.boxes.size(), std::vector<double>(goals.size(), 0.0));
    for (std::size_t i = 0; i < s.boxes.size(); ++i)
        for (std::size_t j = 0; j < goals.size(); ++j)
            m[i][j] = metric_distance(s.boxes[i], goals[j], metric);
    return m;
}

// Minimum-cost perfect matching between boxes and goals: each box is mapped
// to exactly one goal.
inline double hungarian_heuristic(const State& s, const Grid& grid, Metric metric) {
    if (s.boxes.empty()) return 0.0;
    return solve_assignment(build_cost_matrix(s, grid, metric)).total;
}

inline double evaluate_heuristic(HeuristicKind kind, const State& s, const Grid& grid) {
    switch (kind) {
    case HeuristicKind::GreedyEuclid: return greedy_heuristic(s, grid, Metric::Euclid);
    case HeuristicKind::GreedyManhattan: return greedy_heuristic(s, grid, Metric::Manhattan);
    case HeuristicKind::HungarianEuclid: return hungarian_heuristic(s, grid, Metric::Euclid);
    case HeuristicKind::HungarianManhattan: return hungarian_heuristic(s, grid, Metric::Manhattan);
    }
    return 0.0;
}

inline std::string_view heuristic_name(HeuristicKind kind) {
    switch (kind) {
    case HeuristicKind::GreedyEuclid: return "greedy-euclid";
    case HeuristicKind::GreedyManhattan: return "greedy-manhattan";
    case HeuristicKind::HungarianEuclid: return "hungarian-euclid";
    case HeuristicKind::HungarianManhattan: return "hungarian-manhattan";
    }
    return "?";
}

inline std::optional<HeuristicKind> heuristic_from_name(std::string_view name) {
    if (name == "greedy-euclid") return HeuristicKind::GreedyEuclid;
    if (name == "greedy-manhattan") return HeuristicKind::GreedyManhattan;
    if (name == "hungarian-euclid") return HeuristicKind::HungarianEuclid;
    if (name == "hungarian-manhattan") return HeuristicKind::HungarianManhattan;
    return std::nullopt;
}

}  // namespace sokoban
