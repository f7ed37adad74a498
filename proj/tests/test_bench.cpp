#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>
#include <sstream>

#include "sokoban/bench.hpp"
#include "test_support.hpp"

using namespace sokoban;
using namespace testsupport;

namespace {

std::vector<LevelRef> corpus_refs(std::initializer_list<const char*> ids) {
    std::vector<LevelRef> refs;
    for (const char* id : ids) refs.push_back({id, corpus_level(id)});
    return refs;
}

EngineSelection plain(Algorithm a) {
    EngineSelection sel;
    sel.algo = a;
    return sel;
}

std::string strip_elapsed(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(','));
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("build_oracle reproduces the frozen corpus table", "[bench]") {
    std::vector<LevelRef> refs;
    for (const std::string& id : corpus_ids()) refs.push_back({id, corpus_level(id)});
    OracleTable table = build_oracle(refs);
    for (const auto& [id, frozen] : frozen_oracle()) CHECK(table.at(id) == frozen);

    SECTION("already-solved levels get a zero entry") {
        LevelRef solved{"solved", parse_level("####\n#@*#\n####")};
        CHECK(build_oracle({solved}).at("solved") == 0);
    }

    SECTION("infeasible inputs raise OracleInfeasible") {
        CHECK_THROWS_AS(build_oracle({{"L09", corpus_level("L09")}}, 10),
                        OracleInfeasibleError);
        CHECK_THROWS_AS(build_oracle({{"corner", fixture_level("corner.xsb")}}),
                        OracleInfeasibleError);
    }
}

TEST_CASE("run_bench produces one row per level and engine", "[bench]") {
    BenchSpec spec;
    spec.levels = corpus_refs({"L01", "L02"});
    spec.engines = {plain(Algorithm::Bfs), plain(Algorithm::Dfs)};
    spec.repetitions = 2;
    spec.jobs = 2;

    std::vector<BenchRow> rows = run_bench(spec);
    REQUIRE(rows.size() == 4);
    // sorted by (level, algo)
    CHECK(rows[0].level_id == "L01");
    CHECK(rows[0].engine.algo == Algorithm::Bfs);
    CHECK(rows[1].engine.algo == Algorithm::Dfs);
    CHECK(rows[2].level_id == "L02");

    for (const BenchRow& row : rows) {
        REQUIRE(row.error.empty());
        REQUIRE(row.oracle.has_value());
        REQUIRE(row.gap.has_value());
        CHECK(*row.gap >= 0);
        CHECK(*row.gap == static_cast<int>(row.outcome.moves.size()) - *row.oracle);
    }
    CHECK(*rows[0].gap == 0);  // bfs is optimal

    SECTION("limit rows leave the gap empty") {
        BenchSpec tight = spec;
        tight.levels = corpus_refs({"L02"});
        tight.engines = {plain(Algorithm::Dfs)};
        tight.limits.max_depth = 1;
        std::vector<BenchRow> r = run_bench(tight);
        REQUIRE(r.size() == 1);
        CHECK(r[0].outcome.status == SearchStatus::DepthExceeded);
        CHECK(r[0].oracle.has_value());
        CHECK_FALSE(r[0].gap.has_value());
    }

    SECTION("engine failures are captured per row") {
        BenchSpec bad = spec;
        bad.levels = corpus_refs({"L01"});
        bad.engines = {plain(Algorithm::Ucs), plain(Algorithm::Bfs)};  // ucs lacks a cost model
        std::vector<BenchRow> r = run_bench(bad);
        REQUIRE(r.size() == 2);
        CHECK_FALSE(r[1].error.empty());
        CHECK(r[0].error.empty());
        CHECK(r[0].outcome.status == SearchStatus::Solved);
    }
}

TEST_CASE("reports render csv, json and markdown", "[bench]") {
    BenchSpec spec;
    spec.levels = corpus_refs({"L01"});
    spec.engines = {plain(Algorithm::Bfs)};
    spec.repetitions = 1;
    std::vector<BenchRow> rows = run_bench(spec);

    SECTION("csv has the fixed column order") {
        std::string csv = emit_report(rows, ReportFormat::Csv);
        std::istringstream in(csv);
        std::string header, line;
        REQUIRE(std::getline(in, header));
        CHECK(header ==
              "level,algo,heuristic,cost_model,prune,status,steps,oracle,gap,nodes_expanded,"
              "nodes_generated,elapsed_ms");
        REQUIRE(std::getline(in, line));
        CHECK(line.starts_with("L01,bfs,,,hash+deadlock,solved,1,1,0,"));
        CHECK_FALSE(std::getline(in, line));
    }

    SECTION("json parses back") {
        nlohmann::json arr = nlohmann::json::parse(emit_report(rows, ReportFormat::Json));
        REQUIRE(arr.is_array());
        REQUIRE(arr.size() == 1);
        CHECK(arr[0]["level"] == "L01");
        CHECK(arr[0]["status"] == "solved");
        CHECK(arr[0]["oracle"] == 1);
        CHECK(arr[0]["gap"] == 0);
    }

    SECTION("markdown renders one row per config") {
        std::string md = emit_report(rows, ReportFormat::Markdown);
        std::istringstream in(md);
        std::string line;
        int lines = 0;
        while (std::getline(in, line)) ++lines;
        CHECK(lines == 3);  // header, separator, one row
    }
}

TEST_CASE("bench runs are deterministic apart from timing", "[bench]") {
    BenchSpec spec;
    spec.levels = corpus_refs({"L03", "L07"});
    spec.engines = {plain(Algorithm::Bfs), plain(Algorithm::Backtracking)};
    spec.repetitions = 1;
    spec.jobs = 2;
    std::string a = strip_elapsed(emit_report(run_bench(spec), ReportFormat::Csv));
    std::string b = strip_elapsed(emit_report(run_bench(spec), ReportFormat::Csv));
    CHECK(a == b);
}
