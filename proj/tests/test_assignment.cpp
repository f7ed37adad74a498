#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "sokoban/assignment.hpp"

using namespace sokoban;

namespace {

// Permutation brute force, the independent optimum.
double brute_force_min(const CostMatrix& m) {
    int n = static_cast<int>(m.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0;
        for (int i = 0; i < n; ++i) total += m[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool is_bijection(const std::vector<int>& a) {
    std::vector<char> hit(a.size(), 0);
    for (int v : a) {
        if (v < 0 || v >= static_cast<int>(a.size()) || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

}  // namespace

TEST_CASE("assignment solves the trivial and 2x2 cases", "[assignment]") {
    Assignment one = solve_assignment({{1.0}});
    CHECK(one.box_to_goal == std::vector<int>{0});
    CHECK(one.total == 1.0);

    Assignment two = solve_assignment({{2.0, 3.0}, {1.0, 2.0}});
    CHECK(two.total == 4.0);  // 2+2 or 3+1
    CHECK(is_bijection(two.box_to_goal));

    CHECK(solve_assignment({}).box_to_goal.empty());
    CHECK_THROWS_AS(solve_assignment({{1.0, 2.0}}), Error);
}

TEST_CASE("assignment matches brute force on a fixed 5x5 matrix", "[assignment]") {
    CostMatrix m = {{7, 3, 6, 9, 5},
                    {2, 8, 4, 1, 7},
                    {9, 6, 5, 3, 8},
                    {4, 2, 7, 6, 1},
                    {5, 9, 2, 8, 4}};
    Assignment a = solve_assignment(m);
    CHECK(is_bijection(a.box_to_goal));
    CHECK(a.total == brute_force_min(m));
}

TEST_CASE("assignment equals brute force on 1200 random matrices up to 6x6", "[assignment]") {
    std::uint64_t rng = 20240601;
    auto next = [&rng]() {
        rng = rng * 6364136223846793005ULL + 1442695040888963407ULL;
        return rng >> 33;
    };
    for (int trial = 0; trial < 1200; ++trial) {
        int n = 1 + static_cast<int>(next() % 6);
        CostMatrix m(n, std::vector<double>(n));
        for (auto& row : m)
            for (double& v : row) v = static_cast<double>(next() % 50);
        Assignment a = solve_assignment(m);
        REQUIRE(is_bijection(a.box_to_goal));
        REQUIRE(a.total == brute_force_min(m));
    }
}
