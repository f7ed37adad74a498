#pragma once

#include <atomic>
#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sokoban/io.hpp"
#include "sokoban/search.hpp"

namespace sokoban {

class OracleInfeasibleError : public Error {
public:
    using Error::Error;
};

// level-id -> optimal move count, produced only by exhaustive search.
using OracleTable = std::map<std::string, int>;

// Exhaustive minimum-move lengths via two independent routes (BFS and
// iterative deepening) that must agree. Deadlock pruning and macros stay off;
// hashing only de-duplicates states and cannot change lengths.
inline OracleTable build_oracle(const std::vector<LevelRef>& levels,
                                std::uint64_t node_cap = 1'000'000) {
    OracleTable table;
    SearchLimits limits;
    limits.max_depth = std::numeric_limits<int>::max() / 2;
    limits.timeout = std::chrono::duration<double>(std::numeric_limits<double>::infinity());
    limits.max_nodes = node_cap;
    PruneConfig prune{true, false, false};
    for (const LevelRef& ref : levels) {
        SearchOutcome bfs = solve_bfs(ref.level, limits, prune);
        if (bfs.status == SearchStatus::NodesExceeded)
            throw OracleInfeasibleError("oracle node cap exceeded on level " + ref.id);
        if (bfs.status != SearchStatus::Solved)
            throw OracleInfeasibleError("level " + ref.id + " is not solvable");
        SearchOutcome id = solve_dfs_id(ref.level, limits, prune);
        if (id.status != SearchStatus::Solved ||
            id.moves.size() != bfs.moves.size())
            throw OracleInfeasibleError("oracle disagreement on level " + ref.id);
        table[ref.id] = static_cast<int>(bfs.moves.size());
    }
    return table;
}

struct BenchSpec {
    std::vector<LevelRef> levels;
    std::vector<EngineSelection> engines;
    SearchLimits limits;
    PruneConfig prune;
    int repetitions = 3;
    int jobs = 0;  // 0 = hardware concurrency
    bool compute_oracle = true;
    std::uint64_t oracle_node_cap = 1'000'000;
};

struct BenchRow {
    std::string level_id;
    EngineSelection engine;
    PruneConfig prune;
    SearchOutcome outcome;
    std::optional<int> oracle;
    std::optional<int> gap;  // steps - oracle, Solved rows only
    std::string error;       // nonempty when the run failed outright
};

inline std::string prune_string(const PruneConfig& p) {
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) out += '+';
        out += name;
    };
    if (p.use_hashing) add("hash");
    if (p.use_deadlock) add("deadlock");
    if (p.use_tunnel_macros) add("tunnels");
    return out.empty() ? "none" : out;
}

inline nlohmann::json prune_flags_json(const PruneConfig& p) {
    return {{"hashing", p.use_hashing},
            {"deadlock", p.use_deadlock},
            {"tunnel_macros", p.use_tunnel_macros}};
}

// Wire format fixed for the bench harness.
inline nlohmann::json outcome_to_json(const SearchOutcome& outcome, const EngineSelection& sel,
                                      const PruneConfig& prune) {
    nlohmann::json j{
        {"status", status_name(outcome.status)},
        {"moves", moves_to_string(outcome.moves)},
        {"nodes_expanded", outcome.nodes_expanded},
        {"nodes_generated", outcome.nodes_generated},
        {"elapsed_ms", outcome.elapsed.count()},
        {"max_depth_reached", outcome.max_depth_reached},
        {"total_cost", outcome.total_cost},
        {"algo", algorithm_name(sel.algo)},
        {"heuristic", nullptr},
        {"cost_model", nullptr},
        {"prune_flags", prune_flags_json(prune)},
    };
    if (sel.heuristic) j["heuristic"] = heuristic_name(*sel.heuristic);
    if (sel.cost_model) j["cost_model"] = sel.cost_model_name;
    return j;
}

namespace detail {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace detail

// Runs the level x engine matrix. Rows execute in parallel across workers;
// each row repeats `repetitions` times and reports the median elapsed time
// (every other field is deterministic across repetitions).
inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
    OracleTable oracle;
    std::map<std::string, std::string> oracle_errors;
    if (spec.compute_oracle) {
        for (const LevelRef& ref : spec.levels) {
            try {
                OracleTable one = build_oracle({ref}, spec.oracle_node_cap);
                oracle.insert(one.begin(), one.end());
            } catch (const Error& e) {
                oracle_errors[ref.id] = e.what();
            }
        }
    }

    struct Task {
        const LevelRef* level;
        const EngineSelection* engine;
    };
    std::vector<Task> tasks;
    for (const LevelRef& ref : spec.levels)
        for (const EngineSelection& sel : spec.engines) tasks.push_back({&ref, &sel});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    int jobs = spec.jobs > 0 ? spec.jobs
                             : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<int>(jobs, static_cast<int>(tasks.size()) > 0 ? static_cast<int>(tasks.size()) : 1);

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            BenchRow& row = rows[i];
            row.level_id = tasks[i].level->id;
            row.engine = *tasks[i].engine;
            row.prune = spec.prune;
            try {
                std::vector<double> elapsed;
                int reps = std::max(1, spec.repetitions);
                for (int r = 0; r < reps; ++r) {
                    SearchOutcome out =
                        run_engine(tasks[i].level->level, row.engine, spec.limits, spec.prune);
                    elapsed.push_back(out.elapsed.count());
                    if (r == 0) row.outcome = std::move(out);
                }
                row.outcome.elapsed =
                    std::chrono::duration<double, std::milli>(detail::median(elapsed));
                auto it = oracle.find(row.level_id);
                if (it != oracle.end()) {
                    row.oracle = it->second;
                    if (row.outcome.status == SearchStatus::Solved)
                        row.gap = static_cast<int>(row.outcome.moves.size()) - it->second;
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.level_id != b.level_id) return a.level_id < b.level_id;
        return algorithm_name(a.engine.algo) < algorithm_name(b.engine.algo);
    });
    return rows;
}

enum class ReportFormat { Csv, Json, Markdown };

inline std::optional<ReportFormat> report_format_from_name(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    if (name == "markdown") return ReportFormat::Markdown;
    return std::nullopt;
}

namespace detail {

inline std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

struct RowCells {
    std::string level, algo, heuristic, cost_model, prune, status, steps, oracle, gap,
        nodes_expanded, nodes_generated, elapsed_ms;
};

inline RowCells row_cells(const BenchRow& r) {
    RowCells c;
    c.level = r.level_id;
    c.algo = std::string(algorithm_name(r.engine.algo));
    c.heuristic = r.engine.heuristic ? std::string(heuristic_name(*r.engine.heuristic)) : "";
    c.cost_model = r.engine.cost_model ? r.engine.cost_model_name : "";
    c.prune = prune_string(r.prune);
    if (!r.error.empty()) {
        c.status = "error";
        return c;
    }
    c.status = std::string(status_name(r.outcome.status));
    if (r.outcome.status == SearchStatus::Solved)
        c.steps = std::to_string(r.outcome.moves.size());
    if (r.oracle) c.oracle = std::to_string(*r.oracle);
    if (r.gap) c.gap = std::to_string(*r.gap);
    c.nodes_expanded = std::to_string(r.outcome.nodes_expanded);
    c.nodes_generated = std::to_string(r.outcome.nodes_generated);
    c.elapsed_ms = format_ms(r.outcome.elapsed.count());
    return c;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "level,algo,heuristic,cost_model,prune,status,steps,oracle,gap,nodes_expanded,"
    "nodes_generated,elapsed_ms";

inline std::string emit_report(const std::vector<BenchRow>& rows, ReportFormat format) {
    std::string out;
    switch (format) {
    case ReportFormat::Csv: {
        out += kCsvHeader;
        out += '\n';
        for (const BenchRow& r : rows) {
            auto c = detail::row_cells(r);
            out += c.level + ',' + c.algo + ',' + c.heuristic + ',' + c.cost_model + ',' +
                   c.prune + ',' + c.status + ',' + c.steps + ',' + c.oracle + ',' + c.gap +
                   ',' + c.nodes_expanded + ',' + c.nodes_generated + ',' + c.elapsed_ms + '\n';
        }
        return out;
    }
    case ReportFormat::Json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const BenchRow& r : rows) {
            nlohmann::json j = outcome_to_json(r.outcome, r.engine, r.prune);
            j["level"] = r.level_id;
            j["oracle"] = r.oracle ? nlohmann::json(*r.oracle) : nlohmann::json(nullptr);
            j["gap"] = r.gap ? nlohmann::json(*r.gap) : nlohmann::json(nullptr);
            if (!r.error.empty()) j["error"] = r.error;
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }
    case ReportFormat::Markdown: {
        out += "| level | algo | heuristic | cost_model | prune | status | steps | oracle | "
               "gap | nodes_expanded | nodes_generated | elapsed_ms |\n";
        out += "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
        for (const BenchRow& r : rows) {
            auto c = detail::row_cells(r);
            out += "| " + c.level + " | " + c.algo + " | " + c.heuristic + " | " +
                   c.cost_model + " | " + c.prune + " | " + c.status + " | " + c.steps +
                   " | " + c.oracle + " | " + c.gap + " | " + c.nodes_expanded + " | " +
                   c.nodes_generated + " | " + c.elapsed_ms + " |\n";
        }
        return out;
    }
    }
    return out;
}

}  // namespace sokoban
