#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "refnet/bench.hpp"

using namespace refnet;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("refnet_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

// The four-vertex example as a matrix, one column per edge.
const char* example_coord = "4 6 12\n1 1 1\n1 2 1\n1 3 1\n2 1 1\n2 4 1\n3 2 -1\n3 5 1\n3 6 1\n4 3 1\n4 4 1\n4 5 -1\n4 6 1\n";
const char* network_coord = "3 3 6\n1 1 1\n1 3 1\n2 1 -1\n2 2 1\n3 2 -1\n3 3 -1\n";

} // namespace

TEST_CASE("report columns") {
    std::vector<std::string> names;
    for (const auto& c : bench_configs()) names.push_back(c.column());
    CHECK(names == std::vector<std::string>{"SGA_RS", "SGA_BFS", "SGA_DFS", "SGA3_RS", "SGA3_BFS", "SGA3_DFS",
                                            "SGA80_RS", "SGA80_BFS", "SGA80_DFS"});
}

TEST_CASE("empty directory gives a header only") {
    TempDir dir("empty");
    std::ostringstream out;
    write_bench_csv(out, run_bench(dir.path, {}));
    CHECK(out.str() ==
          "instance,k,SGA_RS,SGA_BFS,SGA_DFS,SGA3_RS,SGA3_BFS,SGA3_DFS,SGA80_RS,SGA80_BFS,SGA80_DFS,t,t1,n,status,seed\n");
}

TEST_CASE("bench rows and summary rows") {
    TempDir dir("rows");
    dir.write("example.coord", example_coord);
    dir.write("net.coord", network_coord);
    dir.write("broken.coord", "1 1 1\n1 1 0\n");
    dir.write("ignored.txt", "not an instance\n");
    BenchOptions opts;
    opts.timeout_seconds = 30;
    const auto records = run_bench(dir.path, opts);
    REQUIRE(records.size() == 3);
    CHECK(records[0].instance == "broken");
    CHECK(records[0].status == "error");
    CHECK(records[1].instance == "example");
    CHECK(records[1].k_exact == 1u);
    CHECK(records[1].n == 4);
    CHECK(records[2].instance == "net");
    CHECK(records[2].k_exact == 0u);

    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        for (std::size_t c = 0; c < 9; ++c) {
            CHECK(r.k[c] <= r.n);
            CHECK(*r.k_exact <= r.k[c]);
        }
        for (std::size_t s = 0; s < 3; ++s) {
            CHECK(r.k[s] >= r.k[3 + s]);
            CHECK(r.k[3 + s] >= r.k[6 + s]);
        }
    }

    std::ostringstream out;
    write_bench_csv(out, records, false);
    const auto rows = read_csv(out.str());
    REQUIRE(rows.size() == 1 + 3 + 3);
    for (const auto& row : rows) CHECK(row.size() == 16);
    CHECK(rows[1][0] == "broken");
    CHECK(rows[1][14] == "error");
    CHECK(rows[2][1] == "1");
    CHECK(rows[4][0] == "Average");
    CHECK(rows[5][0] == "Avg. diff.");
    CHECK(rows[5][1] == "0.00");
    CHECK(rows[6][0] == "# exact sol.");
    CHECK(rows[6][1] == "2");
    for (std::size_t c = 0; c < 9; ++c) {
        const int hits = (records[1].k[c] == 1) + (records[2].k[c] == 0);
        CHECK(rows[6][2 + c] == std::to_string(hits));
        const double diff = (static_cast<double>(records[1].k[c]) - 1 + static_cast<double>(records[2].k[c])) / 2;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", diff);
        CHECK(rows[5][2 + c] == buf);
    }

    std::ostringstream again;
    write_bench_csv(again, run_bench(dir.path, opts), false);
    CHECK(again.str() == out.str());

    const auto j = to_json(records[1]);
    CHECK(j["instance"] == "example");
    CHECK(j["k_exact"] == 1);
    CHECK(j["k"]["SGA80_DFS"] == 1);
    CHECK(to_json(records[0])["k"].is_null());
}

TEST_CASE("timeout marker") {
    BenchRecord r;
    r.instance = "x";
    r.status = "timeout";
    r.n = 3;
    std::ostringstream out;
    write_bench_csv(out, {r});
    const auto rows = read_csv(out.str());
    CHECK(rows[1][1] == "---");
    CHECK(rows[1][11] == "---");
    CHECK(rows[3][1] == ""); // no known optimum
    CHECK(rows[4][1] == "0");
}

TEST_CASE("pipeline on AFIRO") {
    const auto path = std::filesystem::path(REFNET_DATA_DIR) / "netlib" / "AFIRO.mps";
    const auto raw = read_matrix(path);
    const auto inst = prepare_instance(path);
    CHECK(inst.name == "AFIRO");
    CHECK(classify_rows(inst.matrix).unit_count() >= classify_rows(raw).unit_count());
    CHECK(inst.graph.n() == classify_rows(inst.matrix).unit_count());
    CHECK(mbd_exact_timed(inst.graph, inst.graph.n(), 60).k == 0);
    for (auto s : all_strategies) CHECK(sga_repeat(inst.graph, 1, s, 1).k == 0);

    PrepareOptions raw_opts;
    raw_opts.scaling = false;
    CHECK(prepare_instance(path, std::nullopt, raw_opts).graph.n() == classify_rows(raw).unit_count());
}

TEST_CASE("watchdog timeout") {
    Rng rng(2);
    std::vector<SignedEdge> edges;
    for (Vertex u = 0; u < 150; ++u)
        for (Vertex v = u + 1; v < 150; ++v)
            if (rng.chance(0.5)) edges.push_back({u, v, rng.chance(0.5) ? Sign::positive : Sign::negative});
    const SignedGraph g(150, edges);
    const auto r = mbd_exact_timed(g, g.n(), 0.05);
    CHECK(r.status == ExactStatus::timeout);
    CHECK(r.elapsed.count() < 10);
}
