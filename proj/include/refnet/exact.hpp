#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <stop_token>
#include <utility>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/signed_graph.hpp"

namespace refnet {

/// Thrown from inside a solver when its stop token fires.
struct SolveCancelled : std::exception {
    const char* what() const noexcept override { return "solve cancelled"; }
};

/// G with every positive edge {u, v} replaced by a path u - w - v through a
/// new vertex w. Negative edges carry over unchanged.
struct SubdividedGraph {
    struct Origin {
        bool subdivision = false;
        Vertex u = 0; ///< the original vertex, or the lower endpoint of the subdivided edge
        Vertex v = 0; ///< equal to u for original vertices
    };

    Graph base;
    std::vector<Origin> origin;
    std::size_t original_count = 0; ///< vertices 0..original_count-1 are the original ones
};

SubdividedGraph subdivide_positive(const SignedGraph& g);

struct OctStats {
    std::size_t compressions = 0;
    std::size_t partitions = 0; ///< 3-partitions whose flow problem was solved
};

/// Decision version: a set X with |X| <= k and H - X bipartite, or nullopt.
/// Iterative compression over the vertices in index order.
std::optional<std::vector<Vertex>> odd_cycle_transversal(const Graph& h, std::size_t k, std::stop_token stop = {},
                                                         OctStats* stats = nullptr);

/// Minimum odd cycle transversal, or nullopt if it exceeds k_max. The bound
/// k starts at 0 and grows by one each time a compression proves the current
/// vertex prefix needs more than k deletions, so the returned size is
/// optimal. Vertices outside the 2-core are dropped first and connected
/// components are solved independently. `insertion_order` (a permutation of
/// the vertices, identity when empty) fixes the compression order.
std::optional<std::vector<Vertex>> minimum_odd_cycle_transversal(const Graph& h, std::size_t k_max,
                                                                 std::stop_token stop = {}, OctStats* stats = nullptr,
                                                                 std::span<const Vertex> insertion_order = {});

enum class ExactStatus { optimal, timeout, limit_exceeded };

const char* to_string(ExactStatus s);

struct ExactResult {
    ExactStatus status = ExactStatus::optimal;
    std::vector<Vertex> deletion; ///< graph vertices, ascending
    std::size_t k = 0; ///< on limit_exceeded, a lower bound (k_max + 1)
    std::chrono::duration<double> elapsed{};
    std::size_t nodes_explored = 0;
};

/// Minimum balanced deletion through bipartization of the subdivided graph.
/// Subdivision vertices in the transversal are replaced by their lower
/// endpoint and the result is re-checked with is_balanced.
ExactResult mbd_exact(const SignedGraph& g, std::size_t k_max, std::stop_token stop = {});

/// Vertex cover of size <= k or nullopt. Degree-0/degree-1/high-degree
/// reductions, then branching on a maximum-degree vertex (it, or all of its
/// neighbors).
std::optional<std::vector<Vertex>> vertex_cover(const Graph& h, std::size_t k, std::stop_token stop = {});

/// Minimum vertex cover, found per component by trying k = 0, 1, 2, ...
/// nullopt if the total would exceed k_max.
std::optional<std::vector<Vertex>> minimum_vertex_cover(const Graph& h, std::size_t k_max, std::stop_token stop = {});

/// Exhaustive search in order of subset size. Intended for n <= 20.
std::pair<std::size_t, std::vector<Vertex>> brute_force_mbd(const SignedGraph& g);
std::pair<std::size_t, std::vector<Vertex>> brute_force_oct(const Graph& h);

} // namespace refnet
