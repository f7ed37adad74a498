#pragma once

#include <array>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "sokoban/bench.hpp"
#include "sokoban/deadlock.hpp"
#include "sokoban/search.hpp"

namespace sokoban {

class EncodingOverflowError : public Error {
public:
    using Error::Error;
};

inline constexpr int kEncodingDim = 32;
inline constexpr int kEncodingCells = kEncodingDim * kEncodingDim;

// Cell classes of the fixed 32x32 state representation.
enum class CellCode : std::uint8_t {
    Exterior = 0,
    Wall = 1,
    Floor = 2,
    Goal = 3,
    Box = 4,
    BoxOnGoal = 5,
    Player = 6,
    PlayerOnGoal = 7,
};

using Encoding = std::array<std::uint8_t, kEncodingCells>;

struct Sample {
    Encoding encoding;
    Direction label;
};

// Level placed at the top-left corner, remainder filled with the exterior code.
inline Encoding encode_state(const State& s, const Grid& grid) {
    if (grid.height() > kEncodingDim || grid.width() > kEncodingDim)
        throw EncodingOverflowError("level does not fit the " + std::to_string(kEncodingDim) +
                                    "x" + std::to_string(kEncodingDim) + " encoding");
    Encoding out;
    out.fill(static_cast<std::uint8_t>(CellCode::Exterior));
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            Position p{r, c};
            CellCode code;
            if (!grid.is_floor(p)) {
                code = CellCode::Wall;
            } else if (p == s.player) {
                code = grid.is_goal(p) ? CellCode::PlayerOnGoal : CellCode::Player;
            } else if (s.has_box(p)) {
                code = grid.is_goal(p) ? CellCode::BoxOnGoal : CellCode::Box;
            } else {
                code = grid.is_goal(p) ? CellCode::Goal : CellCode::Floor;
            }
            out[static_cast<std::size_t>(r) * kEncodingDim + c] = static_cast<std::uint8_t>(code);
        }
    }
    return out;
}

// Rebuilds a level and state from an encoding (test and tooling support; the
// encoding is lossless because in-bounds cells are never exterior-coded).
inline std::pair<Level, State> decode_encoding(const Encoding& enc) {
    int h = 0, w = 0;
    for (int r = 0; r < kEncodingDim; ++r)
        for (int c = 0; c < kEncodingDim; ++c)
            if (enc[static_cast<std::size_t>(r) * kEncodingDim + c] !=
                static_cast<std::uint8_t>(CellCode::Exterior)) {
                h = std::max(h, r + 1);
                w = std::max(w, c + 1);
            }
    Grid grid(h, w);
    State state;
    std::vector<Position> boxes;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            auto code = static_cast<CellCode>(enc[static_cast<std::size_t>(r) * kEncodingDim + c]);
            Position p{r, c};
            if (code == CellCode::Wall || code == CellCode::Exterior) continue;
            grid.set_floor(p);
            if (code == CellCode::Goal || code == CellCode::BoxOnGoal ||
                code == CellCode::PlayerOnGoal)
                grid.set_goal(p);
            if (code == CellCode::Box || code == CellCode::BoxOnGoal) boxes.push_back(p);
            if (code == CellCode::Player || code == CellCode::PlayerOnGoal) state.player = p;
        }
    std::sort(boxes.begin(), boxes.end());
    state.boxes = boxes;
    Level level{std::move(grid), state.player, state.boxes};
    return {std::move(level), std::move(state)};
}

// Optimal-action labels for every reachable, non-deadlocked, non-goal state
// that still has a solution: the label is the first move (in U,D,L,R order)
// of some minimum-move solution from that state.
inline std::vector<std::pair<State, Direction>> label_states(const Level& level,
                                                             const SearchLimits& limits = {}) {
    const Grid& grid = level.grid;
    std::vector<State> states;
    std::vector<std::array<std::int64_t, 4>> children;  // per direction, -1 = illegal
    std::unordered_map<StateKey, std::int64_t> index;

    states.push_back(initial_state(level));
    index[state_key(states[0])] = 0;
    for (std::size_t head = 0; head < states.size(); ++head) {
        if (states.size() > limits.max_nodes)
            throw OracleInfeasibleError("state enumeration exceeded the node cap");
        std::array<std::int64_t, 4> kids{-1, -1, -1, -1};
        for (Direction d : kAllDirections) {
            State cur = states[head];
            if (!is_legal_move(cur, d, grid)) continue;
            Move m{d, false};
            State child = apply_move(cur, m, grid);
            StateKey key = state_key(child);
            auto it = index.find(key);
            std::int64_t ci;
            if (it == index.end()) {
                ci = static_cast<std::int64_t>(states.size());
                index.emplace(std::move(key), ci);
                states.push_back(std::move(child));
            } else {
                ci = it->second;
            }
            kids[static_cast<int>(d)] = ci;
        }
        children.push_back(kids);
    }

    // Exact distances to goal by reverse BFS over the enumerated graph.
    constexpr std::int64_t kInf = -1;
    std::vector<std::int64_t> dist(states.size(), kInf);
    std::vector<std::vector<std::int64_t>> parents(states.size());
    for (std::size_t u = 0; u < states.size(); ++u)
        for (std::int64_t v : children[u])
            if (v >= 0) parents[static_cast<std::size_t>(v)].push_back(static_cast<std::int64_t>(u));
    std::deque<std::int64_t> queue;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (is_goal(states[i], grid)) {
            dist[i] = 0;
            queue.push_back(static_cast<std::int64_t>(i));
        }
    while (!queue.empty()) {
        std::int64_t v = queue.front();
        queue.pop_front();
        for (std::int64_t u : parents[static_cast<std::size_t>(v)])
            if (dist[static_cast<std::size_t>(u)] == kInf) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(u);
            }
    }

    DeadSquares dead = compute_dead_squares(grid);
    std::vector<std::pair<State, Direction>> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (dist[i] <= 0) continue;  // goal states and unsolvable states carry no label
        if (is_deadlocked(states[i], grid, dead)) continue;
        for (Direction d : kAllDirections) {
            std::int64_t c = children[i][static_cast<int>(d)];
            if (c >= 0 && dist[static_cast<std::size_t>(c)] == dist[i] - 1) {
                out.emplace_back(states[i], d);
                break;
            }
        }
    }
    return out;
}

inline std::vector<Sample> make_samples(const Level& level, const SearchLimits& limits = {}) {
    std::vector<Sample> out;
    for (const auto& [state, label] : label_states(level, limits))
        out.push_back(Sample{encode_state(state, level.grid), label});
    return out;
}

namespace detail {

inline Encoding transform_encoding(const Encoding& enc, Symmetry s, int h, int w) {
    Encoding out;
    out.fill(static_cast<std::uint8_t>(CellCode::Exterior));
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            Position q = transform_position({r, c}, s, h, w);
            out[static_cast<std::size_t>(q.row) * kEncodingDim + q.col] =
                enc[static_cast<std::size_t>(r) * kEncodingDim + c];
        }
    return out;
}

}  // namespace detail

// Dihedral augmentation: each sample yields 8, encodings transformed cell-wise
// and labels mapped through the same transform. Duplicates from symmetric
// levels are retained to preserve the x8 factor.
inline std::vector<Sample> augment(const std::vector<Sample>& samples) {
    std::vector<Sample> out;
    out.reserve(samples.size() * kAllSymmetries.size());
    for (const Sample& s : samples) {
        int h = 0, w = 0;
        for (int r = 0; r < kEncodingDim; ++r)
            for (int c = 0; c < kEncodingDim; ++c)
                if (s.encoding[static_cast<std::size_t>(r) * kEncodingDim + c] !=
                    static_cast<std::uint8_t>(CellCode::Exterior)) {
                    h = std::max(h, r + 1);
                    w = std::max(w, c + 1);
                }
        for (Symmetry sym : kAllSymmetries)
            out.push_back(Sample{detail::transform_encoding(s.encoding, sym, h, w),
                                 transform_direction(s.label, sym)});
    }
    return out;
}

struct DatasetManifest {
    std::uint64_t sample_count = 0;
    std::uint64_t train_count = 0;
    std::uint64_t test_count = 0;
    std::map<char, std::uint64_t> label_counts;
    int augmentation_factor = 1;
    std::vector<std::string> source_levels;
    std::uint64_t seed = 0;
    double split = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json labels = nlohmann::json::object();
        for (const auto& [c, n] : label_counts) labels[std::string(1, c)] = n;
        return {{"sample_count", sample_count},   {"train_count", train_count},
                {"test_count", test_count},       {"label_counts", labels},
                {"augmentation_factor", augmentation_factor},
                {"source_levels", source_levels}, {"seed", seed},
                {"split", split}};
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Platform-independent Fisher-Yates so equal seeds give byte-identical files.
inline void deterministic_shuffle(std::vector<std::size_t>& order, std::uint64_t seed) {
    std::uint64_t rng = seed;
    for (std::size_t i = order.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(splitmix64(rng) % i);
        std::swap(order[i - 1], order[j]);
    }
}

inline void write_sample_file(const std::filesystem::path& path,
                              const std::vector<Sample>& samples,
                              const std::vector<std::size_t>& order, std::size_t begin,
                              std::size_t end) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    std::string line(kEncodingCells + 2, '\0');
    for (std::size_t k = begin; k < end; ++k) {
        const Sample& s = samples[order[k]];
        for (int i = 0; i < kEncodingCells; ++i)
            line[static_cast<std::size_t>(i)] = static_cast<char>('0' + s.encoding[i]);
        line[kEncodingCells] = '\t';
        line[kEncodingCells + 1] = direction_char(s.label);
        out << line << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace detail

// Deterministic shuffle under the recorded seed, then a train/test split
// (default 10% test). Files: train.txt, test.txt, manifest.json. One sample
// per line: 1024 cell codes, a tab, the label character.
inline DatasetManifest write_dataset(const std::vector<Sample>& samples,
                                     const std::filesystem::path& dir, double split,
                                     std::uint64_t seed, int augmentation_factor = 1,
                                     std::vector<std::string> source_levels = {}) {
    if (!(split > 0.0 && split < 1.0)) throw Error("split must be in (0, 1)");
    std::filesystem::create_directories(dir);

    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    detail::deterministic_shuffle(order, seed);

    auto test_count = static_cast<std::size_t>(
        std::llround(static_cast<double>(samples.size()) * split));

    DatasetManifest manifest;
    manifest.sample_count = samples.size();
    manifest.test_count = test_count;
    manifest.train_count = samples.size() - test_count;
    manifest.augmentation_factor = augmentation_factor;
    manifest.source_levels = std::move(source_levels);
    manifest.seed = seed;
    manifest.split = split;
    for (Direction d : kAllDirections) manifest.label_counts[direction_char(d)] = 0;
    for (const Sample& s : samples) ++manifest.label_counts[direction_char(s.label)];

    detail::write_sample_file(dir / "test.txt", samples, order, 0, test_count);
    detail::write_sample_file(dir / "train.txt", samples, order, test_count, samples.size());
    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    if (!mf) throw Error("cannot open " + (dir / "manifest.json").string() + " for writing");
    mf << manifest.to_json().dump(2) << '\n';
    if (!mf) throw Error("write failed for " + (dir / "manifest.json").string());
    return manifest;
}

}  // namespace sokoban
