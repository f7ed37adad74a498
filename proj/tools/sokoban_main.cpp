// Command-line front end: solve, replay, bench, dataset, validate.
// stdout carries data (JSON, CSV, frames); stderr carries diagnostics.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sokoban/sokoban.hpp"

namespace {

using namespace sokoban;

struct LimitOpts {
    double timeout_s = 60.0;
    int max_depth = 300;
    std::uint64_t max_nodes = 10'000'000;
    bool no_hash = false;
    bool no_deadlock = false;
    bool tunnels = false;
};

void add_limit_flags(CLI::App* cmd, LimitOpts& opts) {
    cmd->add_option("--timeout", opts.timeout_s, "wall-clock limit in seconds (default 60)");
    cmd->add_option("--max-depth", opts.max_depth, "move-depth limit (default 300)");
    cmd->add_option("--max-nodes", opts.max_nodes, "expansion cap (default 1e7)");
    cmd->add_flag("--no-hash", opts.no_hash, "disable transposition hashing");
    cmd->add_flag("--no-deadlock", opts.no_deadlock, "disable deadlock pruning");
    cmd->add_flag("--tunnels", opts.tunnels, "enable tunnel macro moves");
}

SearchLimits make_limits(const LimitOpts& o) {
    SearchLimits l;
    l.timeout = std::chrono::duration<double>(o.timeout_s);
    l.max_depth = o.max_depth;
    l.max_nodes = o.max_nodes;
    return l;
}

PruneConfig make_prune(const LimitOpts& o) {
    return PruneConfig{!o.no_hash, !o.no_deadlock, o.tunnels};
}

// Builds an engine selection, enforcing that the variant choices the paper
// leaves open are made explicitly: astar needs a heuristic, ucs a cost model.
EngineSelection make_selection(const std::string& algo, const std::string& heuristic,
                               const std::string& cost_model, const std::string& costs) {
    auto a = algorithm_from_name(algo);
    if (!a) throw Error("unknown algorithm '" + algo + "'");
    EngineSelection sel;
    sel.algo = *a;

    if (!heuristic.empty()) {
        if (sel.algo != Algorithm::Astar)
            throw Error("--heuristic is only valid with --algo astar");
        auto h = heuristic_from_name(heuristic);
        if (!h) throw Error("unknown heuristic '" + heuristic + "'");
        sel.heuristic = *h;
    } else if (sel.algo == Algorithm::Astar) {
        throw Error("astar requires --heuristic "
                    "{greedy-euclid,greedy-manhattan,hungarian-euclid,hungarian-manhattan}");
    }

    bool has_cost = !cost_model.empty() || !costs.empty();
    if (has_cost && sel.algo != Algorithm::Ucs)
        throw Error("--cost-model/--costs are only valid with --algo ucs");
    if (sel.algo == Algorithm::Ucs) {
        if (!cost_model.empty() && !costs.empty())
            throw Error("give either --cost-model or --costs, not both");
        if (cost_model == "unit") sel.cost_model = CostModel::unit();
        else if (cost_model == "cf1") sel.cost_model = CostModel::cf1();
        else if (cost_model == "cf2") sel.cost_model = CostModel::cf2();
        else if (!cost_model.empty())
            throw Error("unknown cost model '" + cost_model + "' (unit, cf1, cf2)");
        sel.cost_model_name = cost_model;
        if (!costs.empty()) {
            CostModel cm;
            if (std::sscanf(costs.c_str(), "%lf,%lf,%lf", &cm.c_move, &cm.c_push,
                            &cm.c_unpark) != 3)
                throw Error("--costs expects m,p,u");
            if (cm.c_move < 1 || cm.c_push < 1 || cm.c_unpark < 1)
                throw Error("--costs values must be >= 1");
            sel.cost_model = cm;
            sel.cost_model_name = "custom";
        }
        if (!sel.cost_model)
            throw Error("ucs requires --cost-model {unit,cf1,cf2} or --costs m,p,u");
    }
    return sel;
}

int exit_code_for(SearchStatus status) {
    switch (status) {
    case SearchStatus::Solved: return 0;
    case SearchStatus::Timeout:
    case SearchStatus::DepthExceeded:
    case SearchStatus::NodesExceeded: return 2;
    case SearchStatus::Unsolvable: return 3;
    }
    return 1;
}

int cmd_solve(const std::string& path, int index, const EngineSelection& sel,
              const LimitOpts& opts, bool pretty) {
    Level level = load_level_file(path, index);
    SearchOutcome out = run_engine(level, sel, make_limits(opts), make_prune(opts));
    if (pretty) {
        std::cout << "status:  " << status_name(out.status) << "\n";
        if (out.status == SearchStatus::Solved)
            std::cout << "moves:   " << moves_to_string(out.moves) << " (" << out.moves.size()
                      << " moves, cost " << out.total_cost << ")\n";
        std::cout << "nodes:   " << out.nodes_expanded << " expanded, " << out.nodes_generated
                  << " generated\n"
                  << "depth:   " << out.max_depth_reached << " max reached\n"
                  << "elapsed: " << out.elapsed.count() << " ms\n";
    } else {
        std::cout << outcome_to_json(out, sel, make_prune(opts)).dump() << "\n";
    }
    return exit_code_for(out.status);
}

int cmd_replay(const std::string& path, int index, const std::string& moves_text, bool step) {
    Level level = load_level_file(path, index);
    MoveSeq moves = moves_from_string(moves_text);
    State s = initial_state(level);
    std::cout << render(s, level.grid) << "\n";
    int n = 0;
    for (Move m : moves) {
        ++n;
        if (step) {
            std::string line;
            std::getline(std::cin, line);
        }
        if (!is_legal_move(s, m.dir, level.grid))
            throw IllegalMoveError(std::string("illegal move '") + direction_char(m.dir) +
                                       "' at step " + std::to_string(n),
                                   n);
        s = apply_move(s, m, level.grid);
        std::cout << "\n" << render(s, level.grid) << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".xsb" || ext == ".txt") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else {
        files.emplace_back(path);
    }
    bool all_ok = true;
    for (const auto& file : files) {
        std::vector<std::string> chunks;
        try {
            chunks = split_level_chunks(read_text_file(file));
        } catch (const Error& e) {
            std::cout << file.string() << ": error: " << e.what() << "\n";
            all_ok = false;
            continue;
        }
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            std::string id = file.string();
            if (chunks.size() > 1) id += ":" + std::to_string(i + 1);
            try {
                Level level = parse_level(chunks[i]);
                DeadSquares dead = compute_dead_squares(level.grid);
                std::size_t dead_count = dead.cells(level.grid).size();
                std::size_t tunnel_count = detect_tunnels(level.grid).size();
                std::cout << id << ": ok " << level.grid.width() << "x" << level.grid.height()
                          << " boxes=" << level.initial_boxes.size()
                          << " goals=" << level.grid.goals().size()
                          << " dead_squares=" << dead_count
                          << " tunnel_cells=" << tunnel_count << "\n";
            } catch (const Error& e) {
                std::cout << id << ": error: " << e.what() << "\n";
                all_ok = false;
            }
        }
        if (chunks.empty()) {
            std::cout << file.string() << ": error: no levels\n";
            all_ok = false;
        }
    }
    return all_ok ? 0 : 1;
}

std::vector<EngineSelection> parse_algo_list(const std::string& algos) {
    std::vector<EngineSelection> out;
    std::size_t pos = 0;
    while (pos <= algos.size()) {
        std::size_t comma = algos.find(',', pos);
        std::string entry =
            algos.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? algos.size() + 1 : comma + 1;
        if (entry.empty()) continue;
        std::string name = entry, qualifier;
        if (auto colon = entry.find(':'); colon != std::string::npos) {
            name = entry.substr(0, colon);
            qualifier = entry.substr(colon + 1);
        }
        if (name == "astar")
            out.push_back(make_selection(name, qualifier, "", ""));
        else
            out.push_back(make_selection(name, "", qualifier, ""));
    }
    if (out.empty()) throw Error("--algos is empty");
    return out;
}

int cmd_bench(const std::string& levels_path, const std::string& algos,
              const std::string& format_name, const std::string& out_file, int reps, int jobs,
              bool no_oracle, const LimitOpts& opts) {
    auto format = report_format_from_name(format_name);
    if (!format) throw Error("unknown format '" + format_name + "' (csv, json, markdown)");

    BenchSpec spec;
    spec.levels = load_levels(levels_path);
    if (spec.levels.empty()) throw Error("no levels found under " + levels_path);
    spec.engines = parse_algo_list(algos);
    spec.limits = make_limits(opts);
    spec.prune = make_prune(opts);
    spec.repetitions = reps;
    spec.jobs = jobs;
    spec.compute_oracle = !no_oracle;

    std::vector<BenchRow> rows = run_bench(spec);
    std::string report = emit_report(rows, *format);
    if (out_file.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw Error("cannot open " + out_file + " for writing");
        out << report;
    }
    for (const BenchRow& row : rows)
        if (!row.error.empty())
            std::cerr << row.level_id << " (" << algorithm_name(row.engine.algo)
                      << "): " << row.error << "\n";
    return 0;
}

int cmd_dataset(const std::string& levels_path, const std::string& out_dir, double split,
                std::uint64_t seed, std::uint64_t max_nodes) {
    std::vector<LevelRef> levels = load_levels(levels_path);
    if (levels.empty()) throw Error("no levels found under " + levels_path);
    SearchLimits limits;
    limits.max_nodes = max_nodes;

    std::vector<Sample> base;
    std::vector<std::string> sources;
    for (const LevelRef& ref : levels) {
        std::vector<Sample> samples = make_samples(ref.level, limits);
        base.insert(base.end(), samples.begin(), samples.end());
        sources.push_back(ref.id);
    }
    std::vector<Sample> augmented = augment(base);
    DatasetManifest manifest = write_dataset(augmented, out_dir, split, seed,
                                             static_cast<int>(kAllSymmetries.size()),
                                             std::move(sources));
    std::cout << manifest.to_json().dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sokoban search engines, benchmark harness and dataset pipeline"};
    app.require_subcommand(1);

    // solve
    std::string solve_path, solve_algo, solve_heur, solve_cost, solve_costs;
    int solve_index = 0;
    bool solve_pretty = false;
    LimitOpts solve_opts;
    auto* solve = app.add_subcommand("solve", "solve a level and print the outcome as JSON");
    solve->add_option("level", solve_path, "level file (XSB notation)")->required();
    solve->add_option("--level-index", solve_index, "1-based index for multi-level files");
    solve->add_option("--algo", solve_algo,
                      "algorithm: backtracking, dfs, dfs-id, bfs, ucs, astar")
        ->required();
    solve->add_option("--heuristic", solve_heur, "astar heuristic variant");
    solve->add_option("--cost-model", solve_cost, "ucs cost model: unit, cf1, cf2");
    solve->add_option("--costs", solve_costs, "custom ucs costs m,p,u");
    solve->add_flag("--pretty", solve_pretty, "human-readable summary instead of JSON");
    add_limit_flags(solve, solve_opts);

    // replay
    std::string replay_path, replay_moves;
    int replay_index = 0;
    bool replay_step = false;
    auto* replay = app.add_subcommand("replay", "replay a move sequence frame by frame");
    replay->add_option("level", replay_path, "level file")->required();
    replay->add_option("moves", replay_moves, "move string over U,D,L,R (case-insensitive)");
    replay->add_option("--level-index", replay_index, "1-based index for multi-level files");
    replay->add_flag("--step", replay_step, "wait for newline between frames");

    // bench
    std::string bench_levels, bench_algos, bench_format = "csv", bench_out;
    int bench_reps = 3, bench_jobs = 0;
    bool bench_no_oracle = false;
    LimitOpts bench_opts;
    auto* bench = app.add_subcommand("bench", "run a level x algorithm matrix");
    bench->add_option("--levels", bench_levels, "level file or directory")->required();
    bench->add_option("--algos", bench_algos,
                      "comma list, e.g. bfs,dfs,ucs:cf1,astar:hungarian-manhattan")
        ->required();
    bench->add_option("--format", bench_format, "csv, json or markdown (default csv)");
    bench->add_option("--out", bench_out, "output file (default stdout)");
    bench->add_option("--reps", bench_reps, "timing repetitions per row (default 3)");
    bench->add_option("--jobs", bench_jobs, "worker threads (default logical cores)");
    bench->add_flag("--no-oracle", bench_no_oracle, "skip oracle computation");
    add_limit_flags(bench, bench_opts);

    // dataset
    std::string ds_levels, ds_out;
    double ds_split = 0.1;
    std::uint64_t ds_seed = 0, ds_max_nodes = 1'000'000;
    auto* dataset = app.add_subcommand("dataset", "emit the supervised-learning dataset");
    dataset->add_option("--levels", ds_levels, "level file or directory")->required();
    dataset->add_option("--out", ds_out, "output directory")->required();
    dataset->add_option("--split", ds_split, "test fraction (default 0.1)");
    dataset->add_option("--seed", ds_seed, "shuffle seed (default 0)");
    dataset->add_option("--max-nodes", ds_max_nodes, "state enumeration cap per level");

    // validate
    std::string val_path;
    auto* validate = app.add_subcommand("validate", "check level files and print diagnostics");
    validate->add_option("path", val_path, "level file or directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (solve->parsed()) {
            EngineSelection sel = make_selection(solve_algo, solve_heur, solve_cost, solve_costs);
            return cmd_solve(solve_path, solve_index, sel, solve_opts, solve_pretty);
        }
        if (replay->parsed()) return cmd_replay(replay_path, replay_index, replay_moves, replay_step);
        if (bench->parsed())
            return cmd_bench(bench_levels, bench_algos, bench_format, bench_out, bench_reps,
                             bench_jobs, bench_no_oracle, bench_opts);
        if (dataset->parsed()) return cmd_dataset(ds_levels, ds_out, ds_split, ds_seed, ds_max_nodes);
        if (validate->parsed()) return cmd_validate(val_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
