// Acceptance suite: runs every acceptance criterion against the bundled
// corpus and prints one PASS/FAIL line per criterion. Exit code = number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sokoban/bench.hpp"
#include "sokoban/dataset.hpp"
#include "sokoban/sokoban.hpp"
#include "test_support.hpp"

using namespace sokoban;
using namespace testsupport;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion-%d %s: %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

struct CorpusEntry {
    std::string id;
    Level level;
    int oracle;
    StateGraph graph;
};

std::vector<CorpusEntry>& corpus() {
    static std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (const auto& [id, len] : frozen_oracle()) {
            Level level = corpus_level(id);
            StateGraph graph = build_state_graph(level);
            out.push_back({id, std::move(level), len, std::move(graph)});
        }
        return out;
    }();
    return entries;
}

std::uint64_t g_solved_checked = 0;
std::uint64_t g_solved_valid = 0;

bool record_solved(const Level& level, const SearchOutcome& out) {
    if (out.status != SearchStatus::Solved) return true;
    ++g_solved_checked;
    bool ok = solves(level, out.moves);
    if (ok) ++g_solved_valid;
    return ok;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2.0;
}

// --- criterion 1: optimality agreement, full matrix under 60 s ---
void criterion_optimality() {
    SearchLimits limits = ample_limits();
    PruneConfig prune;
    bool ok = true;
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    for (const CorpusEntry& e : corpus()) {
        std::vector<std::pair<std::string, SearchOutcome>> runs;
        runs.emplace_back("backtracking", solve_backtracking(e.level, limits, prune));
        runs.emplace_back("bfs", solve_bfs(e.level, limits, prune));
        runs.emplace_back("dfs-id", solve_dfs_id(e.level, limits, prune));
        runs.emplace_back("ucs-unit", solve_ucs(e.level, limits, prune, CostModel::unit()));
        runs.emplace_back("astar-gm",
                          solve_astar(e.level, limits, prune, HeuristicKind::GreedyManhattan));
        runs.emplace_back(
            "astar-hm", solve_astar(e.level, limits, prune, HeuristicKind::HungarianManhattan));
        for (const auto& [name, out] : runs) {
            if (out.status != SearchStatus::Solved ||
                static_cast<int>(out.moves.size()) != e.oracle) {
                ok = false;
                detail += e.id + "/" + name + " len " + std::to_string(out.moves.size()) +
                          " vs oracle " + std::to_string(e.oracle) + "; ";
            }
            if (!record_solved(e.level, out)) ok = false;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) {
        ok = false;
        detail += "matrix took " + std::to_string(secs) + " s; ";
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "6 engines x %zu levels, matrix %.2f s", corpus().size(),
                  secs);
    report(1, "optimality-agreement", ok, ok ? buf : detail);
}

// --- criterion 3: admissibility, consistency, hungarian >= greedy ---
void criterion_heuristics() {
    constexpr double kEps = 1e-9;
    std::uint64_t states = 0, edges = 0;
    bool ok = true;
    std::string detail;
    for (const CorpusEntry& e : corpus()) {
        const Grid& grid = e.level.grid;
        std::vector<double> gm(e.graph.states.size()), hm(e.graph.states.size());
        for (std::size_t i = 0; i < e.graph.states.size(); ++i) {
            const State& s = e.graph.states[i];
            gm[i] = greedy_heuristic(s, grid, Metric::Manhattan);
            hm[i] = hungarian_heuristic(s, grid, Metric::Manhattan);
            double ge = greedy_heuristic(s, grid, Metric::Euclid);
            double he = hungarian_heuristic(s, grid, Metric::Euclid);
            ++states;
            if (e.graph.dist[i] >= 0) {
                double d = static_cast<double>(e.graph.dist[i]);
                if (gm[i] > d + kEps || hm[i] > d + kEps) {
                    ok = false;
                    detail += e.id + " inadmissible at state " + std::to_string(i) + "; ";
                }
            }
            if (hm[i] < gm[i] - kEps || he < ge - kEps) {
                ok = false;
                detail += e.id + " hungarian < greedy at state " + std::to_string(i) + "; ";
            }
        }
        for (std::size_t i = 0; i < e.graph.states.size(); ++i)
            for (long long c : e.graph.children[i]) {
                if (c < 0) continue;
                ++edges;
                auto j = static_cast<std::size_t>(c);
                if (std::abs(gm[i] - gm[j]) > 1.0 + kEps ||
                    std::abs(hm[i] - hm[j]) > 1.0 + kEps) {
                    ok = false;
                    detail += e.id + " inconsistent edge; ";
                }
            }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%llu states, %llu edges, zero violations",
                  static_cast<unsigned long long>(states),
                  static_cast<unsigned long long>(edges));
    report(3, "heuristic-admissibility-consistency", ok, ok ? buf : detail);
}

// --- criterion 4: assignment equals permutation brute force ---
void criterion_assignment() {
    std::uint64_t rng = 777;
    auto next = [&rng]() {
        rng = rng * 6364136223846793005ULL + 1442695040888963407ULL;
        return rng >> 33;
    };
    bool ok = true;
    int trials = 1500;
    for (int t = 0; t < trials && ok; ++t) {
        int n = 1 + static_cast<int>(next() % 6);
        CostMatrix m(n, std::vector<double>(n));
        for (auto& row : m)
            for (double& v : row) v = static_cast<double>(next() % 100);
        double got = solve_assignment(m).total;

        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        double best = std::numeric_limits<double>::infinity();
        do {
            double total = 0;
            for (int i = 0; i < n; ++i) total += m[i][perm[i]];
            best = std::min(best, total);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (got != best) ok = false;
    }
    report(4, "assignment-optimality", ok,
           ok ? std::to_string(trials) + " random matrices n<=6, exact equality"
              : "mismatch against permutation brute force");
}

// --- criterion 5: pruning toggles are sound ---
void criterion_pruning() {
    SearchLimits limits = ample_limits();
    bool ok = true;
    std::string detail;
    for (const CorpusEntry& e : corpus()) {
        SearchOutcome base = solve_bfs(e.level, limits, PruneConfig{true, true, false});
        SearchOutcome no_hash = solve_bfs(e.level, limits, PruneConfig{false, true, false});
        SearchOutcome no_dead = solve_bfs(e.level, limits, PruneConfig{true, false, false});
        SearchOutcome tunnels = solve_bfs(e.level, limits, PruneConfig{true, true, true});
        for (const SearchOutcome* out : {&base, &no_hash, &no_dead, &tunnels}) {
            if (out->status != SearchStatus::Solved ||
                static_cast<int>(out->moves.size()) != e.oracle) {
                ok = false;
                detail += e.id + " toggle changed solvability or length; ";
            }
            if (!record_solved(e.level, *out)) ok = false;
        }
        if (base.nodes_expanded > no_hash.nodes_expanded) {
            ok = false;
            detail += e.id + " hashing increased expansions; ";
        }
        if (base.nodes_expanded > no_dead.nodes_expanded) {
            ok = false;
            detail += e.id + " deadlock pruning increased expansions; ";
        }
    }
    report(5, "pruning-soundness", ok,
           ok ? "hash/deadlock/tunnel toggles preserve BFS lengths on all levels" : detail);
}

// --- criterion 6: deadlock certification, zero false positives ---
void criterion_deadlock() {
    bool ok = true;
    std::uint64_t flagged = 0, states = 0;
    std::string detail;
    for (const CorpusEntry& e : corpus()) {
        DeadSquares dead = compute_dead_squares(e.level.grid);
        for (std::size_t i = 0; i < e.graph.states.size(); ++i) {
            ++states;
            if (!is_deadlocked(e.graph.states[i], e.level.grid, dead)) continue;
            ++flagged;
            if (e.graph.dist[i] != StateGraph::kUnreachable) {
                ok = false;
                detail += e.id + " false positive at state " + std::to_string(i) + "; ";
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%llu reachable states, %llu flagged, zero false positives",
                  static_cast<unsigned long long>(states),
                  static_cast<unsigned long long>(flagged));
    report(6, "deadlock-certification", ok, ok ? buf : detail);
}

// --- criterion 7: A* efficiency vs BFS, hungarian vs greedy echo ---
void criterion_astar_efficiency() {
    SearchLimits limits = ample_limits();
    PruneConfig prune;
    bool ok = true;
    std::string detail;
    std::vector<double> greedy_nodes, hungarian_nodes;
    for (const CorpusEntry& e : corpus()) {
        SearchOutcome bfs = solve_bfs(e.level, limits, prune);
        SearchOutcome gm = solve_astar(e.level, limits, prune, HeuristicKind::GreedyManhattan);
        SearchOutcome hm =
            solve_astar(e.level, limits, prune, HeuristicKind::HungarianManhattan);
        if (gm.nodes_expanded > bfs.nodes_expanded || hm.nodes_expanded > bfs.nodes_expanded) {
            ok = false;
            detail += e.id + " astar expanded more than bfs; ";
        }
        greedy_nodes.push_back(static_cast<double>(gm.nodes_expanded));
        hungarian_nodes.push_back(static_cast<double>(hm.nodes_expanded));
        if (!record_solved(e.level, gm) || !record_solved(e.level, hm)) ok = false;
    }
    double mg = median_of(greedy_nodes), mh = median_of(hungarian_nodes);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "astar<=bfs on all levels; median nodes hungarian %.1f vs greedy %.1f (%s)",
                  mh, mg, mh <= mg ? "echo holds" : "echo does not hold");
    report(7, "astar-efficiency", ok, ok ? buf : detail);
}

// --- criterion 8: dataset pipeline ---
void criterion_dataset() {
    bool ok = true;
    std::string detail;
    std::vector<Sample> all_base;
    for (const CorpusEntry& e : corpus()) {
        auto labeled = label_states(e.level, ample_limits());
        // every label starts an optimal solution, per the independent graph
        std::unordered_map<StateKey, std::size_t> index;
        for (std::size_t i = 0; i < e.graph.states.size(); ++i)
            index[state_key(e.graph.states[i])] = i;
        for (const auto& [state, dir] : labeled) {
            auto it = index.find(state_key(state));
            if (it == index.end()) {
                ok = false;
                detail += e.id + " labeled an unreachable state; ";
                continue;
            }
            std::size_t i = it->second;
            long long child = e.graph.children[i][static_cast<int>(dir)];
            if (child < 0 || e.graph.dist[i] <= 0 ||
                e.graph.dist[static_cast<std::size_t>(child)] != e.graph.dist[i] - 1) {
                ok = false;
                detail += e.id + " label does not start an optimal solution; ";
            }
        }
        for (const auto& [state, dir] : labeled)
            all_base.push_back(Sample{encode_state(state, e.level.grid), dir});
    }

    std::vector<Sample> augmented = augment(all_base);
    if (augmented.size() != all_base.size() * 8) {
        ok = false;
        detail += "augmentation factor != 8; ";
    }

    std::size_t keep = (augmented.size() / 10) * 10;  // divisible count => exact split
    std::vector<Sample> trimmed(augmented.begin(),
                                augmented.begin() + static_cast<std::ptrdiff_t>(keep));
    auto dir1 = std::filesystem::temp_directory_path() / "sokoban_acceptance_ds1";
    auto dir2 = std::filesystem::temp_directory_path() / "sokoban_acceptance_ds2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    DatasetManifest m1 = write_dataset(trimmed, dir1, 0.10, 99, 8, {"corpus"});
    DatasetManifest m2 = write_dataset(trimmed, dir2, 0.10, 99, 8, {"corpus"});
    if (m1.test_count != keep / 10 || m1.train_count != keep - keep / 10) {
        ok = false;
        detail += "split not exact on divisible count; ";
    }
    for (const char* f : {"train.txt", "test.txt", "manifest.json"})
        if (read_text_file(dir1 / f) != read_text_file(dir2 / f)) {
            ok = false;
            detail += std::string("non-deterministic ") + f + "; ";
        }

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu labels, x8 augmentation, %llu/%llu split, byte-identical reruns",
                  all_base.size(), static_cast<unsigned long long>(m1.train_count),
                  static_cast<unsigned long long>(m1.test_count));
    report(8, "dataset-pipeline", ok, ok ? buf : detail);
}

// --- criterion 9: limit semantics ---
void criterion_limits() {
    bool ok = true;
    std::string detail;

    Level stress = fixture_level("stress.xsb");
    SearchLimits timeout_limits;
    timeout_limits.timeout = std::chrono::duration<double>(0.2);
    SearchOutcome timed = solve_bfs(stress, timeout_limits, PruneConfig{});
    if (timed.status != SearchStatus::Timeout) {
        ok = false;
        detail += "expected timeout status; ";
    }
    if (timed.elapsed.count() > 0.2 * 1.5 * 1000.0) {
        ok = false;
        detail += "timeout exceeded 1.5x budget; ";
    }

    SearchLimits shallow;
    shallow.max_depth = 1;
    for (const CorpusEntry& e : corpus()) {
        if (e.oracle <= 1) continue;
        for (Algorithm algo : {Algorithm::Bfs, Algorithm::Dfs, Algorithm::DfsId}) {
            EngineSelection sel;
            sel.algo = algo;
            SearchOutcome out = run_engine(e.level, sel, shallow, PruneConfig{});
            if (out.status != SearchStatus::DepthExceeded) {
                ok = false;
                detail += e.id + "/" + std::string(algorithm_name(algo)) +
                          " expected depth_exceeded; ";
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "timeout %.1f ms within 1.5x of 200 ms; max_depth=1 reports depth_exceeded",
                  timed.elapsed.count());
    report(9, "limit-semantics", ok, ok ? buf : detail);
}

}  // namespace

int main() {
    criterion_optimality();

    // criterion 2 aggregates validity over every Solved outcome this suite produced
    auto finish_validity = [] {
        bool ok = g_solved_checked > 0 && g_solved_checked == g_solved_valid;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%llu/%llu solved outcomes replay to the goal",
                      static_cast<unsigned long long>(g_solved_valid),
                      static_cast<unsigned long long>(g_solved_checked));
        report(2, "solution-validity", ok, buf);
    };

    criterion_heuristics();
    criterion_assignment();
    criterion_pruning();
    criterion_deadlock();
    criterion_astar_efficiency();
    criterion_dataset();
    criterion_limits();
    finish_validity();

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
