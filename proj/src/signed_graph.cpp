#include "refnet/signed_graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <queue>

namespace refnet {

namespace {

bool edge_less(const SignedEdge& a, const SignedEdge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.sign > b.sign; // positive before negative
}

} // namespace

SignedGraph::SignedGraph(std::size_t n, std::span<const SignedEdge> edges, std::vector<std::size_t> origin)
    : adjacency_(n), origin_(std::move(origin)) {
    if (origin_.empty()) {
        origin_.resize(n);
        std::iota(origin_.begin(), origin_.end(), std::size_t{0});
    }
    if (origin_.size() != n) throw std::invalid_argument("origin size does not match vertex count");

    edges_.reserve(edges.size());
    for (auto e : edges) {
        if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(), edge_less);
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    for (const auto& e : edges_) {
        adjacency_[e.u].push_back({e.v, e.sign});
        adjacency_[e.v].push_back({e.u, e.sign});
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) {
            return a.vertex != b.vertex ? a.vertex < b.vertex : a.sign > b.sign;
        });
    }
}

bool SignedGraph::has_edge(Vertex u, Vertex v, Sign s) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), SignedEdge{u, v, s}, edge_less);
}

std::size_t SignedGraph::negative_edge_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const SignedEdge& e) { return e.sign == Sign::negative; }));
}

SwitchSet SwitchSet::from_vertices(std::size_t n, std::span<const Vertex> vertices) {
    SwitchSet w;
    w.members.assign(n, false);
    for (Vertex v : vertices) w.members.at(v) = true;
    return w;
}

std::vector<Vertex> SwitchSet::vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < members.size(); ++v) {
        if (members[v]) out.push_back(v);
    }
    return out;
}

SignedGraph build_signed_graph(const SparseMatrix& a) {
    const auto unit = classify_rows(a).unit;
    std::vector<std::size_t> vertex_of(a.n_rows(), a.n_rows());
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < a.n_rows(); ++i) {
        if (unit[i]) {
            vertex_of[i] = origin.size();
            origin.push_back(i);
        }
    }

    std::vector<SignedEdge> edges;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < a.n_cols(); ++j) {
        members.clear();
        for (std::size_t k : a.col(j)) {
            if (unit[a.entry(k).row]) members.push_back(k);
        }
        for (std::size_t s = 0; s < members.size(); ++s) {
            for (std::size_t t = s + 1; t < members.size(); ++t) {
                const auto& ei = a.entry(members[s]);
                const auto& ej = a.entry(members[t]);
                const Sign sign = ei.value == ej.value ? Sign::negative : Sign::positive;
                edges.push_back({vertex_of[ei.row], vertex_of[ej.row], sign});
            }
        }
    }
    const std::size_t n = origin.size();
    return SignedGraph(n, edges, std::move(origin));
}

SignedGraph apply_switch(const SignedGraph& g, const SwitchSet& w) {
    std::vector<SignedEdge> edges = g.edges();
    for (auto& e : edges) {
        if (w.contains(e.u) != w.contains(e.v)) e.sign = flip(e.sign);
    }
    return SignedGraph(g.n(), edges, g.origins());
}

BalanceCertificate is_balanced(const SignedGraph& g) {
    constexpr Vertex none = static_cast<Vertex>(-1);
    std::vector<int> label(g.n(), -1);
    std::vector<Vertex> parent(g.n(), none);
    std::vector<Sign> parent_sign(g.n(), Sign::positive);
    std::vector<std::size_t> depth(g.n(), 0);
    std::queue<Vertex> queue;

    for (Vertex s = 0; s < g.n(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            const Vertex u = queue.front();
            queue.pop();
            for (const auto& nb : g.neighbors(u)) {
                const Vertex v = nb.vertex;
                const int want = label[u] ^ (nb.sign == Sign::negative ? 1 : 0);
                if (label[v] < 0) {
                    label[v] = want;
                    parent[v] = u;
                    parent_sign[v] = nb.sign;
                    depth[v] = depth[u] + 1;
                    queue.push(v);
                    continue;
                }
                if (label[v] == want) continue;
                std::vector<Vertex> up_u, up_v;
                std::vector<Sign> sign_u, sign_v;
                Vertex a = u, b = v;
                while (depth[a] > depth[b]) {
                    up_u.push_back(a);
                    sign_u.push_back(parent_sign[a]);
                    a = parent[a];
                }
                while (depth[b] > depth[a]) {
                    up_v.push_back(b);
                    sign_v.push_back(parent_sign[b]);
                    b = parent[b];
                }
                while (a != b) {
                    up_u.push_back(a);
                    sign_u.push_back(parent_sign[a]);
                    a = parent[a];
                    up_v.push_back(b);
                    sign_v.push_back(parent_sign[b]);
                    b = parent[b];
                }
                // Cycle: u -> ... -> lca -> ... -> v -> (conflicting edge) -> u.
                OddCycle cycle;
                cycle.vertices = up_u;
                cycle.signs = sign_u;
                cycle.vertices.push_back(a);
                for (std::size_t t = up_v.size(); t-- > 0;) {
                    cycle.signs.push_back(sign_v[t]);
                    cycle.vertices.push_back(up_v[t]);
                }
                cycle.signs.push_back(nb.sign);
                return BalanceCertificate{std::move(cycle)};
            }
        }
    }
    SwitchSet w;
    w.members.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) w.members[v] = label[v] == 1;
    return BalanceCertificate{std::move(w)};
}

Subgraph induced_subgraph(const SignedGraph& g, std::span<const Vertex> vertices) {
    std::vector<Vertex> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

    constexpr Vertex none = static_cast<Vertex>(-1);
    std::vector<Vertex> new_id(g.n(), none);
    std::vector<std::size_t> origin;
    for (std::size_t t = 0; t < keep.size(); ++t) {
        new_id.at(keep[t]) = t;
        origin.push_back(g.origin(keep[t]));
    }
    std::vector<SignedEdge> edges;
    for (const auto& e : g.edges()) {
        if (new_id[e.u] != none && new_id[e.v] != none) edges.push_back({new_id[e.u], new_id[e.v], e.sign});
    }
    return Subgraph{SignedGraph(keep.size(), edges, std::move(origin)), std::move(keep)};
}

Subgraph remove_vertices(const SignedGraph& g, std::span<const Vertex> removed) {
    std::vector<bool> gone(g.n(), false);
    for (Vertex v : removed) gone.at(v) = true;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!gone[v]) keep.push_back(v);
    }
    return induced_subgraph(g, keep);
}

Subgraph negative_subgraph(const SignedGraph& g) {
    std::vector<bool> touched(g.n(), false);
    for (const auto& e : g.edges()) {
        if (e.sign == Sign::negative) touched[e.u] = touched[e.v] = true;
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (touched[v]) keep.push_back(v);
    }
    Subgraph sub = induced_subgraph(g, keep);
    std::vector<SignedEdge> negative;
    for (const auto& e : sub.graph.edges()) {
        if (e.sign == Sign::negative) negative.push_back(e);
    }
    sub.graph = SignedGraph(sub.graph.n(), negative, sub.graph.origins());
    return sub;
}

Graph negative_edge_graph(const SignedGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : g.edges()) {
        if (e.sign == Sign::negative) edges.emplace_back(e.u, e.v);
    }
    return Graph(g.n(), edges);
}

bool has_odd_negative_count(const SignedGraph& g, const OddCycle& cycle) {
    const auto& vs = cycle.vertices;
    if (vs.size() < 2 || cycle.signs.size() != vs.size()) return false;
    std::vector<Vertex> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (vs.size() == 2 && cycle.signs[0] == cycle.signs[1]) return false;
    std::size_t negatives = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!g.has_edge(vs[i], vs[(i + 1) % vs.size()], cycle.signs[i])) return false;
        if (cycle.signs[i] == Sign::negative) ++negatives;
    }
    return negatives % 2 == 1;
}

void write_signed_graph(std::ostream& out, const SignedGraph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << sign_char(e.sign) << '\n';
}

UnbalancedRows::UnbalancedRows(OddCycle witness_rows)
    : std::runtime_error("rows do not induce a balanced subgraph (odd negative cycle through " +
                         std::to_string(witness_rows.vertices.size()) + " rows)"),
      witness_(std::move(witness_rows)) {}

NetworkExtraction extract_network(const SparseMatrix& a, std::span<const std::size_t> rows) {
    NetworkExtraction out;
    out.rows.assign(rows.begin(), rows.end());
    std::sort(out.rows.begin(), out.rows.end());
    out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());

    SparseMatrix sub = a.select_rows(out.rows);
    const auto unit = classify_rows(sub).unit;
    for (std::size_t t = 0; t < out.rows.size(); ++t) {
        if (!unit[t]) throw std::invalid_argument("row " + a.row_label(out.rows[t]) + " is not a (0,±1)-row");
    }

    const SignedGraph g = build_signed_graph(sub);
    auto cert = is_balanced(g);
    if (!cert.balanced()) {
        OddCycle w = cert.witness();
        for (auto& v : w.vertices) v = out.rows[g.origin(v)];
        throw UnbalancedRows(std::move(w));
    }

    std::vector<bool> negate(out.rows.size(), false);
    for (Vertex v : cert.labeling().vertices()) {
        negate[g.origin(v)] = true;
        out.reflected.push_back(out.rows[g.origin(v)]);
    }
    out.network = a.select_rows(out.rows, negate);
    return out;
}

} // namespace refnet
