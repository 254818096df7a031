#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace refnet {

using Vertex = std::size_t;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    /// Loops are rejected; repeated edges collapse to one.
    Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    std::size_t n() const noexcept { return adjacency_.size(); }
    std::size_t m() const noexcept { return edge_count_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
    bool has_edge(Vertex u, Vertex v) const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Subgraph induced by `keep` (by flag), renumbered in ascending order.
    /// `to_parent`, if given, receives the new-to-old vertex map.
    Graph induced(const std::vector<bool>& keep, std::vector<Vertex>* to_parent = nullptr) const;

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// 2-coloring of `g` restricted to vertices with `alive[v]`, or empty if
/// an odd cycle exists there. An empty `alive` means all vertices.
std::vector<int> two_coloring(const Graph& g, const std::vector<bool>& alive = {});

inline bool is_bipartite(const Graph& g, const std::vector<bool>& alive = {}) {
    return g.n() == 0 || !two_coloring(g, alive).empty();
}

/// Component id per vertex, numbered in order of the lowest vertex.
std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count = nullptr);

bool is_vertex_cover(const Graph& g, std::span<const Vertex> cover);
bool is_independent_set(const Graph& g, std::span<const Vertex> set);

} // namespace refnet
