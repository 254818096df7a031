#include "refnet/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace refnet {

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : adjacency_(n) {
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        edge_count_ += adj.size();
    }
    edge_count_ /= 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n(); ++u) {
        for (Vertex v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::induced(const std::vector<bool>& keep, std::vector<Vertex>* to_parent) const {
    std::vector<Vertex> new_id(n(), n());
    std::vector<Vertex> old_id;
    for (Vertex v = 0; v < n(); ++v) {
        if (keep[v]) {
            new_id[v] = old_id.size();
            old_id.push_back(v);
        }
    }
    std::vector<std::pair<Vertex, Vertex>> sub;
    for (auto [u, v] : edges()) {
        if (keep[u] && keep[v]) sub.emplace_back(new_id[u], new_id[v]);
    }
    if (to_parent) *to_parent = old_id;
    return Graph(old_id.size(), sub);
}

std::vector<int> two_coloring(const Graph& g, const std::vector<bool>& alive) {
    const auto live = [&](Vertex v) { return alive.empty() || alive[v]; };
    std::vector<int> color(g.n(), -1);
    std::queue<Vertex> queue;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (!live(s) || color[s] >= 0) continue;
        color[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop();
            for (Vertex v : g.neighbors(u)) {
                if (!live(v)) continue;
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    queue.push(v);
                } else if (color[v] == color[u]) {
                    return {};
                }
            }
        }
    }
    return color;
}

std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count) {
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(g.n(), unseen);
    std::size_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] != unseen) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex v : g.neighbors(u)) {
                if (comp[v] == unseen) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

bool is_vertex_cover(const Graph& g, std::span<const Vertex> cover) {
    std::vector<bool> in(g.n(), false);
    for (Vertex v : cover) in[v] = true;
    for (auto [u, v] : g.edges()) {
        if (!in[u] && !in[v]) return false;
    }
    return true;
}

bool is_independent_set(const Graph& g, std::span<const Vertex> set) {
    std::vector<bool> in(g.n(), false);
    for (Vertex v : set) in[v] = true;
    for (Vertex v : set) {
        for (Vertex u : g.neighbors(v)) {
            if (in[u]) return false;
        }
    }
    return true;
}

} // namespace refnet
