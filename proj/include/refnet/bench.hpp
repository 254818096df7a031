#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "refnet/exact.hpp"
#include "refnet/scaling.hpp"
#include "refnet/sga.hpp"
#include "refnet/signed_graph.hpp"
#include "refnet/sparse_matrix.hpp"

namespace refnet {

struct PrepareOptions {
    bool scaling = true;
    ScalingOptions scale;
};

/// Matrix after the optional scaling step, with G over its (0,±1)-rows.
struct PreparedInstance {
    std::string name;
    SparseMatrix matrix;
    SignedGraph graph;
};

PreparedInstance prepare_matrix(std::string name, const SparseMatrix& a, const PrepareOptions& options = {});
PreparedInstance prepare_instance(const std::filesystem::path& path, std::optional<MatrixFormat> format = std::nullopt,
                                  const PrepareOptions& options = {});

/// mbd_exact with a wall-clock limit enforced by a watchdog thread.
/// A non-positive timeout means no limit.
ExactResult mbd_exact_timed(const SignedGraph& g, std::size_t k_max, double timeout_seconds);

struct HeuristicConfig {
    std::size_t repeats;
    ForestStrategy strategy;

    std::string column() const; ///< e.g. SGA80_DFS
};

/// The nine report columns: SGA, SGA3, SGA80, each with RS, BFS, DFS.
const std::array<HeuristicConfig, 9>& bench_configs();

struct BenchRecord {
    std::string instance;
    std::size_t n = 0;
    std::optional<std::size_t> k_exact;
    std::string status;              ///< an ExactStatus name, or "error"
    std::optional<double> t_exact;   ///< seconds; empty unless the exact run finished
    std::array<std::size_t, 9> k{};  ///< in bench_configs() order
    double t1 = 0;                   ///< mean single-run time of SGA(RS), SGA(BFS), SGA(DFS)
    std::uint64_t seed = 0;
    std::string error;
};

struct BenchOptions {
    double timeout_seconds = 3600;
    std::uint64_t seed = 1;
    PrepareOptions prepare;
};

BenchRecord bench_instance(const PreparedInstance& inst, const BenchOptions& options);

/// Files with extension .mps or .coord (any case) directly inside `dir`, by name.
std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir);

/// One record per instance file, ordered by instance name. Failures are recorded, not thrown.
std::vector<BenchRecord> run_bench(const std::filesystem::path& dir, const BenchOptions& options);

/// Header, one row per record, then the Average, Avg. diff. and # exact sol.
/// rows (omitted when there are no records). With `timing` false the t and
/// t1 cells are left empty.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records, bool timing = true);

nlohmann::json to_json(const BenchRecord& r);

} // namespace refnet
