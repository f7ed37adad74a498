#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <queue>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sokoban/deadlock.hpp"
#include "sokoban/heuristics.hpp"
#include "sokoban/state.hpp"
#include "sokoban/tunnels.hpp"

namespace sokoban {

enum class SearchStatus { Solved, Timeout, DepthExceeded, NodesExceeded, Unsolvable };

inline std::string_view status_name(SearchStatus s) {
    switch (s) {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::Timeout: return "timeout";
    case SearchStatus::DepthExceeded: return "depth_exceeded";
    case SearchStatus::NodesExceeded: return "nodes_exceeded";
    case SearchStatus::Unsolvable: return "unsolvable";
    }
    return "?";
}

struct SearchLimits {
    int max_depth = 300;                                      // moves
    std::chrono::duration<double> timeout{60.0};              // wall clock
    std::uint64_t max_nodes = 10'000'000;                     // expansion cap
};

// Edge costs: plain player move, push, and pushing a box off a goal cell.
// A push off a goal counts as unpark even when it lands on another goal.
struct CostModel {
    double c_move = 1.0;
    double c_push = 2.0;
    double c_unpark = 5.0;

    static constexpr CostModel unit() { return {1.0, 1.0, 1.0}; }
    static constexpr CostModel cf1() { return {1.0, 2.0, 5.0}; }
    static constexpr CostModel cf2() { return {1.0, 2.0, 1.0}; }
};

struct PruneConfig {
    bool use_hashing = true;
    bool use_deadlock = true;
    bool use_tunnel_macros = false;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::Unsolvable;
    MoveSeq moves;                // empty unless Solved
    std::uint64_t nodes_expanded = 0;
    std::uint64_t nodes_generated = 0;
    std::chrono::duration<double, std::milli> elapsed{0.0};
    int max_depth_reached = 0;
    double total_cost = 0.0;      // cost-model units (move count for unit-cost engines)
};

namespace detail {

struct Edge {
    State state;
    Direction dir;
    std::uint16_t repeat;  // identical moves in the edge; > 1 only for tunnel macros
    bool pushed;
    double cost;           // cost-model cost of the whole edge
};

struct Node {
    State state;
    std::int32_t parent;
    std::int32_t depth;    // moves from the root
    double g;              // accumulated priority cost (engine-specific)
    Direction dir;
    std::uint16_t repeat;
    bool pushed;
};

class SearchRun {
public:
    SearchRun(const Level& level, const SearchLimits& limits, const PruneConfig& prune,
              const CostModel& cost_model)
        : grid(level.grid), limits(limits), prune(prune), cost_model(cost_model),
          dead(compute_dead_squares(grid)), tunnels(grid),
          start(std::chrono::steady_clock::now()) {}

    const Grid& grid;
    SearchLimits limits;
    PruneConfig prune;
    CostModel cost_model;
    DeadSquares dead;
    TunnelMap tunnels;
    std::chrono::steady_clock::time_point start;

    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    int max_depth_seen = 0;
    bool depth_cut = false;

    bool timed_out() const {
        return std::chrono::steady_clock::now() - start >= limits.timeout;
    }

    // Children of `s` in fixed order U, D, L, R. Deadlocked children are
    // discarded before insertion; tunnel macros compress forced pushes.
    void expand(const State& s, std::vector<Edge>& out) {
        out.clear();
        for (Direction d : kAllDirections) {
            if (!is_legal_move(s, d, grid)) continue;
            Move m{d, false};
            State child = apply_move(s, m, grid);
            double cost = m.pushed ? (grid.is_goal(s.player + direction_delta(d))
                                          ? cost_model.c_unpark
                                          : cost_model.c_push)
                                   : cost_model.c_move;
            std::uint16_t repeat = 1;
            if (m.pushed && prune.use_tunnel_macros) {
                MacroResult mr = macro_extend(s, m, grid, tunnels);
                repeat = static_cast<std::uint16_t>(mr.moves.size());
                child = std::move(mr.state);
                cost += (repeat - 1) * cost_model.c_push;
            }
            ++generated;
            if (prune.use_deadlock && is_deadlocked(child, grid, dead)) continue;
            out.push_back(Edge{std::move(child), d, repeat, m.pushed, cost});
        }
    }

    SearchOutcome finish(SearchStatus status, MoveSeq moves = {}, double total_cost = 0.0) const {
        SearchOutcome out;
        out.status = status;
        out.moves = std::move(moves);
        out.nodes_expanded = expanded;
        out.nodes_generated = generated;
        out.elapsed = std::chrono::steady_clock::now() - start;
        out.max_depth_reached = max_depth_seen;
        out.total_cost = total_cost;
        return out;
    }

    // Root handling shared by every engine: the root counts as generated, and
    // a deadlocked non-goal root resolves immediately.
    std::optional<SearchOutcome> check_root(const State& root) {
        generated = 1;
        if (is_goal(root, grid)) return std::nullopt;  // engines goal-test at expansion
        if (prune.use_deadlock && is_deadlocked(root, grid, dead)) {
            expanded = 1;
            return finish(SearchStatus::Unsolvable);
        }
        return std::nullopt;
    }
};

inline MoveSeq reconstruct(const std::vector<Node>& arena, std::int32_t idx) {
    MoveSeq out;
    for (std::int32_t i = idx; arena[i].parent >= 0; i = arena[i].parent)
        for (int k = 0; k < arena[i].repeat; ++k)
            out.push_back(Move{arena[i].dir, arena[i].pushed});
    std::reverse(out.begin(), out.end());
    return out;
}

// Depth-limited DFS in U,D,L,R child order, first solution wins. A path set
// guards against cycles; with hashing on, states remember the shallowest
// depth seen and deeper revisits are pruned (keeps the bound-completeness
// DFS-ID relies on).
struct DfsCore {
    SearchRun& run;
    std::unordered_map<StateKey, int>* visited;  // null when hashing is off

    std::optional<SearchOutcome> iterate(const State& root, int bound, bool& cut) {
        std::vector<Node> arena;
        std::unordered_set<StateKey> on_path;
        struct Frame {
            std::int32_t node;
            StateKey key;
            std::vector<Edge> edges;
            std::size_t next = 0;
        };
        std::vector<Frame> stack;

        auto enter = [&](std::int32_t idx) -> std::optional<SearchOutcome> {
            if (run.expanded >= run.limits.max_nodes)
                return run.finish(SearchStatus::NodesExceeded);
            if (run.timed_out()) return run.finish(SearchStatus::Timeout);
            ++run.expanded;
            const Node& n = arena[idx];
            run.max_depth_seen = std::max(run.max_depth_seen, static_cast<int>(n.depth));
            if (is_goal(n.state, run.grid)) {
                MoveSeq moves = reconstruct(arena, idx);
                double len = static_cast<double>(moves.size());
                return run.finish(SearchStatus::Solved, std::move(moves), len);
            }
            Frame f;
            f.node = idx;
            f.key = state_key(n.state);
            run.expand(n.state, f.edges);
            on_path.insert(f.key);
            stack.push_back(std::move(f));
            return std::nullopt;
        };

        arena.push_back(Node{root, -1, 0, 0.0, Direction::Up, 0, false});
        if (visited) (*visited)[state_key(root)] = 0;
        if (auto done = enter(0)) return done;

        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next >= f.edges.size()) {
                on_path.erase(f.key);
                stack.pop_back();
                continue;
            }
            Edge e = std::move(f.edges[f.next++]);
            std::int32_t child_depth = arena[f.node].depth + e.repeat;
            if (child_depth > bound) {
                cut = true;
                continue;
            }
            StateKey key = state_key(e.state);
            if (on_path.contains(key)) continue;
            if (visited) {
                auto it = visited->find(key);
                if (it != visited->end() && it->second <= child_depth) continue;
                (*visited)[std::move(key)] = child_depth;
            }
            arena.push_back(Node{std::move(e.state), f.node, child_depth, 0.0, e.dir,
                                 e.repeat, e.pushed});
            if (auto done = enter(static_cast<std::int32_t>(arena.size() - 1))) return done;
        }
        return std::nullopt;
    }
};

}  // namespace detail

// Appendix-style breadth-first search: FIFO frontier, goal test at expansion,
// states closed at generation when hashing is on. Minimum-move solutions.
inline SearchOutcome solve_bfs(const Level& level, const SearchLimits& limits = {},
                               const PruneConfig& prune = {}) {
    detail::SearchRun run(level, limits, prune, CostModel::unit());
    State root = initial_state(level);
    if (auto out = run.check_root(root)) return *out;

    std::vector<detail::Node> arena;
    arena.push_back(detail::Node{std::move(root), -1, 0, 0.0, Direction::Up, 0, false});
    std::unordered_set<StateKey> closed;
    if (prune.use_hashing) closed.insert(state_key(arena[0].state));

    std::vector<detail::Edge> edges;
    for (std::size_t head = 0; head < arena.size(); ++head) {
        if (run.expanded >= limits.max_nodes) return run.finish(SearchStatus::NodesExceeded);
        if (run.timed_out()) return run.finish(SearchStatus::Timeout);
        ++run.expanded;
        const std::int32_t depth = arena[head].depth;
        run.max_depth_seen = std::max(run.max_depth_seen, static_cast<int>(depth));
        if (is_goal(arena[head].state, run.grid)) {
            MoveSeq moves = detail::reconstruct(arena, static_cast<std::int32_t>(head));
            double len = static_cast<double>(moves.size());
            return run.finish(SearchStatus::Solved, std::move(moves), len);
        }
        run.expand(arena[head].state, edges);
        for (detail::Edge& e : edges) {
            std::int32_t child_depth = depth + e.repeat;
            if (child_depth > limits.max_depth) {
                run.depth_cut = true;
                continue;
            }
            if (prune.use_hashing) {
                StateKey key = state_key(e.state);
                if (closed.contains(key)) continue;
                closed.insert(std::move(key));
            }
            arena.push_back(detail::Node{std::move(e.state), static_cast<std::int32_t>(head),
                                         child_depth, 0.0, e.dir, e.repeat, e.pushed});
        }
    }
    return run.finish(run.depth_cut ? SearchStatus::DepthExceeded : SearchStatus::Unsolvable);
}

// First solution in fixed child order, bounded by limits.max_depth; the
// returned length may exceed the optimum.
inline SearchOutcome solve_dfs(const Level& level, const SearchLimits& limits = {},
                               const PruneConfig& prune = {}) {
    detail::SearchRun run(level, limits, prune, CostModel::unit());
    State root = initial_state(level);
    if (auto out = run.check_root(root)) return *out;

    std::unordered_map<StateKey, int> visited;
    detail::DfsCore core{run, prune.use_hashing ? &visited : nullptr};
    bool cut = false;
    if (auto done = core.iterate(root, limits.max_depth, cut)) return *done;
    return run.finish(cut ? SearchStatus::DepthExceeded : SearchStatus::Unsolvable);
}

// Iterative deepening: depth bounds 1, 2, ... up to limits.max_depth with a
// fresh visited set per iteration, so the first solution found is a
// minimum-move solution.
inline SearchOutcome solve_dfs_id(const Level& level, const SearchLimits& limits = {},
                                  const PruneConfig& prune = {}) {
    detail::SearchRun run(level, limits, prune, CostModel::unit());
    State root = initial_state(level);
    if (auto out = run.check_root(root)) return *out;

    for (int bound = 1; bound <= limits.max_depth; ++bound) {
        std::unordered_map<StateKey, int> visited;
        detail::DfsCore core{run, prune.use_hashing ? &visited : nullptr};
        bool cut = false;
        if (auto done = core.iterate(root, bound, cut)) return *done;
        if (!cut) return run.finish(SearchStatus::Unsolvable);
    }
    return run.finish(SearchStatus::DepthExceeded);
}

// Exhaustive recursion over the whole space (subject to limits), keeping the
// shortest solution found. Branch-and-bound on the incumbent plus
// shallowest-depth hashing keep it exact and fast.
inline SearchOutcome solve_backtracking(const Level& level, const SearchLimits& limits = {},
                                        const PruneConfig& prune = {}) {
    detail::SearchRun run(level, limits, prune, CostModel::unit());
    State root = initial_state(level);
    if (auto out = run.check_root(root)) return *out;

    std::vector<detail::Node> arena;
    arena.push_back(detail::Node{root, -1, 0, 0.0, Direction::Up, 0, false});
    std::unordered_map<StateKey, int> visited;
    if (prune.use_hashing) visited[state_key(root)] = 0;
    std::unordered_set<StateKey> on_path;

    std::optional<MoveSeq> best;
    int best_len = limits.max_depth + 1;

    struct Frame {
        std::int32_t node;
        StateKey key;
        std::vector<detail::Edge> edges;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;

    auto enter = [&](std::int32_t idx) -> std::optional<SearchOutcome> {
        if (run.expanded >= limits.max_nodes) return run.finish(SearchStatus::NodesExceeded);
        if (run.timed_out()) return run.finish(SearchStatus::Timeout);
        ++run.expanded;
        const detail::Node& n = arena[idx];
        run.max_depth_seen = std::max(run.max_depth_seen, static_cast<int>(n.depth));
        if (is_goal(n.state, run.grid)) {
            if (n.depth < best_len) {
                best_len = n.depth;
                best = detail::reconstruct(arena, idx);
            }
            return std::nullopt;  // goal nodes are not expanded further
        }
        Frame f;
        f.node = idx;
        f.key = state_key(n.state);
        run.expand(n.state, f.edges);
        on_path.insert(f.key);
        stack.push_back(std::move(f));
        return std::nullopt;
    };

    if (auto done = enter(0)) return *done;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next >= f.edges.size()) {
            on_path.erase(f.key);
            stack.pop_back();
            continue;
        }
        detail::Edge e = std::move(f.edges[f.next++]);
        std::int32_t child_depth = arena[f.node].depth + e.repeat;
        if (child_depth > limits.max_depth) {
            run.depth_cut = true;
            continue;
        }
        if (child_depth >= best_len) continue;  // cannot improve the incumbent
        StateKey key = state_key(e.state);
        if (on_path.contains(key)) continue;
        if (prune.use_hashing) {
            auto it = visited.find(key);
            if (it != visited.end() && it->second <= child_depth) continue;
            visited[key] = child_depth;
        }
        arena.push_back(detail::Node{std::move(e.state), f.node, child_depth, 0.0, e.dir,
                                     e.repeat, e.pushed});
        if (auto done = enter(static_cast<std::int32_t>(arena.size() - 1))) return *done;
    }
    if (best) return run.finish(SearchStatus::Solved, std::move(*best),
                                static_cast<double>(best_len));
    return run.finish(run.depth_cut ? SearchStatus::DepthExceeded : SearchStatus::Unsolvable);
}

namespace detail {

// Shared best-first loop for UCS and A*: lazy priority queue ordered by
// (f, insertion sequence), best-g map updated at generation, re-open on a
// strictly smaller g.
template <typename FScore, typename GCost>
SearchOutcome best_first(const Level& level, const SearchLimits& limits,
                         const PruneConfig& prune, const CostModel& cm, FScore f_score,
                         GCost g_cost) {
    SearchRun run(level, limits, prune, cm);
    State root = initial_state(level);
    if (auto out = run.check_root(root)) return *out;

    std::vector<Node> arena;
    arena.push_back(Node{std::move(root), -1, 0, 0.0, Direction::Up, 0, false});

    struct HeapEntry {
        double f;
        std::uint64_t seq;
        std::int32_t idx;
        bool operator>(const HeapEntry& o) const {
            return f != o.f ? f > o.f : seq > o.seq;
        }
    };
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> open;
    std::unordered_map<StateKey, double> best_g;

    std::uint64_t seq = 0;
    open.push(HeapEntry{f_score(arena[0].state, 0.0), seq++, 0});
    if (prune.use_hashing) best_g[state_key(arena[0].state)] = 0.0;

    std::vector<Edge> edges;
    while (!open.empty()) {
        HeapEntry top = open.top();
        open.pop();
        const std::int32_t idx = top.idx;
        if (prune.use_hashing) {
            auto it = best_g.find(state_key(arena[idx].state));
            if (it != best_g.end() && arena[idx].g > it->second) continue;  // stale entry
        }
        if (run.expanded >= limits.max_nodes) return run.finish(SearchStatus::NodesExceeded);
        if (run.timed_out()) return run.finish(SearchStatus::Timeout);
        ++run.expanded;
        const std::int32_t depth = arena[idx].depth;
        const double g = arena[idx].g;
        run.max_depth_seen = std::max(run.max_depth_seen, static_cast<int>(depth));
        if (is_goal(arena[idx].state, run.grid)) {
            MoveSeq moves = reconstruct(arena, idx);
            return run.finish(SearchStatus::Solved, std::move(moves), g);
        }
        run.expand(arena[idx].state, edges);
        for (Edge& e : edges) {
            std::int32_t child_depth = depth + e.repeat;
            if (child_depth > limits.max_depth) {
                run.depth_cut = true;
                continue;
            }
            double child_g = g + g_cost(e);
            if (prune.use_hashing) {
                StateKey key = state_key(e.state);
                auto it = best_g.find(key);
                if (it != best_g.end() && it->second <= child_g) continue;
                best_g[std::move(key)] = child_g;
            }
            double f = f_score(e.state, child_g);
            arena.push_back(Node{std::move(e.state), idx, child_depth, child_g, e.dir,
                                 e.repeat, e.pushed});
            open.push(HeapEntry{f, seq++, static_cast<std::int32_t>(arena.size() - 1)});
        }
    }
    return run.finish(run.depth_cut ? SearchStatus::DepthExceeded : SearchStatus::Unsolvable);
}

}  // namespace detail

// Dijkstra over the cost model: returns a minimum-total-cost solution;
// total_cost is in cost-model units.
inline SearchOutcome solve_ucs(const Level& level, const SearchLimits& limits,
                               const PruneConfig& prune, const CostModel& cost) {
    return detail::best_first(
        level, limits, prune, cost, [](const State&, double g) { return g; },
        [](const detail::Edge& e) { return e.cost; });
}

// A* with unit move costs: f = g + h. The Manhattan heuristics are consistent,
// so solutions are minimum-move and expansions never exceed BFS.
inline SearchOutcome solve_astar(const Level& level, const SearchLimits& limits,
                                 const PruneConfig& prune, HeuristicKind h) {
    const Grid& grid = level.grid;
    return detail::best_first(
        level, limits, prune, CostModel::unit(),
        [&grid, h](const State& s, double g) { return g + evaluate_heuristic(h, s, grid); },
        [](const detail::Edge& e) { return static_cast<double>(e.repeat); });
}

enum class Algorithm { Backtracking, Dfs, DfsId, Bfs, Ucs, Astar };

inline std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Backtracking: return "backtracking";
    case Algorithm::Dfs: return "dfs";
    case Algorithm::DfsId: return "dfs-id";
    case Algorithm::Bfs: return "bfs";
    case Algorithm::Ucs: return "ucs";
    case Algorithm::Astar: return "astar";
    }
    return "?";
}

inline std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    if (name == "backtracking") return Algorithm::Backtracking;
    if (name == "dfs") return Algorithm::Dfs;
    if (name == "dfs-id") return Algorithm::DfsId;
    if (name == "bfs") return Algorithm::Bfs;
    if (name == "ucs") return Algorithm::Ucs;
    if (name == "astar") return Algorithm::Astar;
    return std::nullopt;
}

// One engine pick: algorithm plus the variant choices it needs.
struct EngineSelection {
    Algorithm algo = Algorithm::Bfs;
    std::optional<HeuristicKind> heuristic;   // astar only
    std::optional<CostModel> cost_model;      // ucs only
    std::string cost_model_name;              // "unit", "cf1", "cf2" or "custom"
};

inline SearchOutcome run_engine(const Level& level, const EngineSelection& sel,
                                const SearchLimits& limits, const PruneConfig& prune) {
    switch (sel.algo) {
    case Algorithm::Backtracking: return solve_backtracking(level, limits, prune);
    case Algorithm::Dfs: return solve_dfs(level, limits, prune);
    case Algorithm::DfsId: return solve_dfs_id(level, limits, prune);
    case Algorithm::Bfs: return solve_bfs(level, limits, prune);
    case Algorithm::Ucs:
        if (!sel.cost_model) throw Error("ucs requires a cost model");
        return solve_ucs(level, limits, prune, *sel.cost_model);
    case Algorithm::Astar:
        if (!sel.heuristic) throw Error("astar requires a heuristic");
        return solve_astar(level, limits, prune, *sel.heuristic);
    }
    throw Error("unknown algorithm");
}

}  // namespace sokoban
