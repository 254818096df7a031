#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <string_view>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/random.hpp"
#include "refnet/signed_graph.hpp"

namespace refnet {

enum class ForestStrategy { rs, bfs, dfs };

std::string_view to_string(ForestStrategy s);
std::optional<ForestStrategy> parse_strategy(std::string_view text);

inline constexpr ForestStrategy all_strategies[] = {ForestStrategy::rs, ForestStrategy::bfs, ForestStrategy::dfs};

/// Rooted spanning forest of a signed graph.
struct SpanningForest {
    static constexpr Vertex no_parent = static_cast<Vertex>(-1);

    std::vector<Vertex> parent;      ///< no_parent for roots
    std::vector<Sign> parent_sign;   ///< sign of the edge to the parent
    std::vector<Vertex> roots;       ///< in creation order
    std::vector<Vertex> order;       ///< discovery order; parents precede children

    std::size_t edge_count() const { return order.size() - roots.size(); }
};

/// Random search: a random vertex is marked, then uniformly random edges
/// between marked and unmarked vertices are taken; a fresh random vertex is
/// marked when no such edge remains.
SpanningForest forest_rs(const SignedGraph& g, Rng& rng);

/// FIFO traversal, neighbors ascending; each new tree starts at an unmarked
/// vertex of maximum degree (lowest index on ties).
SpanningForest forest_bfs(const SignedGraph& g);

/// Depth-first traversal with an explicit stack, neighbors ascending; each new
/// tree starts at the lowest unmarked vertex.
SpanningForest forest_dfs(const SignedGraph& g);

/// All three strategies avoid a vertex pair joined by both a positive and a
/// negative edge while any other edge can still extend the forest; when only
/// such a pair remains, its positive edge is used.
SpanningForest build_forest(const SignedGraph& g, ForestStrategy strategy, Rng& rng);

/// Vertices whose root path holds an odd number of negative edges.
SwitchSet switch_set_from_forest(const SpanningForest& forest);

/// Greedy minimum-degree maximal independent set. `order` is a permutation
/// of the vertices; degree ties go to the earliest position. An empty
/// `order` means the identity.
std::vector<Vertex> greedy_independent_set(const Graph& n, std::span<const Vertex> order = {});

struct HeuristicResult {
    std::vector<Vertex> retained;   ///< I, ascending
    std::vector<Vertex> reflection; ///< W restricted to I: switching it makes G[I] all positive
    std::size_t n = 0;
    std::size_t k = 0;              ///< n - |I|
    ForestStrategy strategy = ForestStrategy::dfs;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    std::size_t best_iteration = 0;
    std::chrono::duration<double> elapsed{};
};

/// One SGA run: forest, switch to make it positive, then keep every vertex
/// outside the negative subgraph N plus a greedy independent set of N.
HeuristicResult sga(const SignedGraph& g, ForestStrategy strategy, Rng& rng);

/// r iterations; iteration i draws from Rng(seed + i) and, for i > 0, first
/// relabels the vertices by a random permutation. The largest I wins, ties
/// to the earliest iteration.
HeuristicResult sga_repeat(const SignedGraph& g, std::size_t repeats, ForestStrategy strategy, std::uint64_t seed);

struct VertexCoverBudget {
    std::size_t max_cover = 1000; ///< largest cover the exact solver may search for
    std::stop_token stop;
};

/// SGA with the greedy step replaced by a minimum vertex cover C of N:
/// I = (V \ V(N)) ∪ (V(N) \ C). Returns nullopt when the budget runs out.
std::optional<HeuristicResult> sga_vc(const SignedGraph& g, ForestStrategy strategy, Rng& rng,
                                      const VertexCoverBudget& budget = {});

/// sga_vc under the iteration scheme of sga_repeat. nullopt as soon as one
/// iteration runs out of budget.
std::optional<HeuristicResult> sga_vc_repeat(const SignedGraph& g, std::size_t repeats, ForestStrategy strategy,
                                             std::uint64_t seed, const VertexCoverBudget& budget = {});

/// Steps 3-4 on a given forest; used by sga and sga_vc.
HeuristicResult sga_from_forest(const SignedGraph& g, const SpanningForest& forest,
                                std::span<const Vertex> order = {});

/// Relabels vertices: new vertex t is old vertex `new_to_old[t]`. Origins follow their vertices.
SignedGraph permute_vertices(const SignedGraph& g, std::span<const Vertex> new_to_old);

} // namespace refnet
