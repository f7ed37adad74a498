#pragma once

#include <limits>
#include <vector>

#include "sokoban/geometry.hpp"

namespace sokoban {

// Square cost matrix, rows = boxes, cols = goals, entries >= 0.
using CostMatrix = std::vector<std::vector<double>>;

struct Assignment {
    std::vector<int> box_to_goal;  // bijection, box i -> goal box_to_goal[i]
    double total = 0.0;
};

// Kuhn-Munkres with row/column potentials, O(n^3). Returns a minimum-cost
// perfect matching; the total is the exact sum of the matched entries.
inline Assignment solve_assignment(const CostMatrix& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n) throw Error("cost matrix is not square");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // 1-based with a virtual row/col 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0);  // match[j] = row assigned to column j
    std::vector<int> way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = match[j0], j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment out;
    out.box_to_goal.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (match[j] != 0) out.box_to_goal[match[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) out.total += cost[i][out.box_to_goal[i]];
    return out;
}

}  // namespace sokoban
