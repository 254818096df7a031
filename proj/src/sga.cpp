#include "refnet/sga.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "refnet/exact.hpp"

namespace refnet {

std::string_view to_string(ForestStrategy s) {
    switch (s) {
    case ForestStrategy::rs: return "RS";
    case ForestStrategy::bfs: return "BFS";
    case ForestStrategy::dfs: return "DFS";
    }
    return "?";
}

std::optional<ForestStrategy> parse_strategy(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "rs") return ForestStrategy::rs;
    if (lower == "bfs") return ForestStrategy::bfs;
    if (lower == "dfs") return ForestStrategy::dfs;
    return std::nullopt;
}

namespace {

/// One entry per distinct neighbor. A +/- pair is `parallel` and carries the positive sign.
struct Link {
    Vertex to;
    Sign sign;
    bool parallel;
};

std::vector<std::vector<Link>> collapse_links(const SignedGraph& g) {
    std::vector<std::vector<Link>> links(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        auto nbs = g.neighbors(v);
        for (std::size_t t = 0; t < nbs.size(); ++t) {
            if (t + 1 < nbs.size() && nbs[t + 1].vertex == nbs[t].vertex) {
                links[v].push_back({nbs[t].vertex, Sign::positive, true});
                ++t;
            } else {
                links[v].push_back({nbs[t].vertex, nbs[t].sign, false});
            }
        }
    }
    return links;
}

class ForestBuilder {
public:
    explicit ForestBuilder(std::size_t n) : marked_(n, false) {
        forest_.parent.assign(n, SpanningForest::no_parent);
        forest_.parent_sign.assign(n, Sign::positive);
        forest_.order.reserve(n);
    }

    bool marked(Vertex v) const { return marked_[v]; }
    bool complete() const { return forest_.order.size() == marked_.size(); }

    void root(Vertex v) {
        marked_[v] = true;
        forest_.roots.push_back(v);
        forest_.order.push_back(v);
    }

    void attach(Vertex child, Vertex parent, Sign sign) {
        marked_[child] = true;
        forest_.parent[child] = parent;
        forest_.parent_sign[child] = sign;
        forest_.order.push_back(child);
    }

    SpanningForest take() && { return std::move(forest_); }

private:
    SpanningForest forest_;
    std::vector<bool> marked_;
};

struct Candidate {
    Vertex parent;
    Vertex child;
    Sign sign;
};

} // namespace

SpanningForest forest_rs(const SignedGraph& g, Rng& rng) {
    const auto links = collapse_links(g);
    ForestBuilder fb(g.n());

    std::vector<Vertex> pool(g.n());
    std::iota(pool.begin(), pool.end(), Vertex{0});
    std::vector<std::size_t> pool_pos(g.n());
    std::iota(pool_pos.begin(), pool_pos.end(), std::size_t{0});
    std::vector<Candidate> singles, doubles;

    auto mark = [&](Vertex v) {
        const std::size_t p = pool_pos[v];
        pool[p] = pool.back();
        pool_pos[pool[p]] = p;
        pool.pop_back();
        for (const auto& l : links[v]) {
            if (fb.marked(l.to)) continue;
            (l.parallel ? doubles : singles).push_back({v, l.to, l.sign});
        }
    };
    auto draw = [&](std::vector<Candidate>& list) -> std::optional<Candidate> {
        while (!list.empty()) {
            const auto idx = static_cast<std::size_t>(rng.below(list.size()));
            Candidate c = list[idx];
            list[idx] = list.back();
            list.pop_back();
            if (!fb.marked(c.child)) return c;
        }
        return std::nullopt;
    };

    while (!pool.empty()) {
        auto c = draw(singles);
        if (!c) c = draw(doubles);
        if (c) {
            fb.attach(c->child, c->parent, c->sign);
            mark(c->child);
        } else {
            const Vertex v = pool[static_cast<std::size_t>(rng.below(pool.size()))];
            fb.root(v);
            mark(v);
        }
    }
    return std::move(fb).take();
}

SpanningForest forest_bfs(const SignedGraph& g) {
    const auto links = collapse_links(g);
    ForestBuilder fb(g.n());

    std::vector<Vertex> by_degree(g.n());
    std::iota(by_degree.begin(), by_degree.end(), Vertex{0});
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    std::size_t next_root = 0;

    std::vector<Vertex> queue;
    queue.reserve(g.n());
    std::size_t head = 0;
    std::vector<Candidate> deferred;
    std::size_t deferred_head = 0;

    while (!fb.complete()) {
        if (head == queue.size()) {
            bool extended = false;
            while (deferred_head < deferred.size()) {
                const auto c = deferred[deferred_head++];
                if (fb.marked(c.child)) continue;
                fb.attach(c.child, c.parent, c.sign);
                queue.push_back(c.child);
                extended = true;
                break;
            }
            if (!extended) {
                while (fb.marked(by_degree[next_root])) ++next_root;
                fb.root(by_degree[next_root]);
                queue.push_back(by_degree[next_root]);
            }
        }
        const Vertex u = queue[head++];
        for (const auto& l : links[u]) {
            if (fb.marked(l.to)) continue;
            if (l.parallel) {
                deferred.push_back({u, l.to, l.sign});
                continue;
            }
            fb.attach(l.to, u, l.sign);
            queue.push_back(l.to);
        }
    }
    return std::move(fb).take();
}

SpanningForest forest_dfs(const SignedGraph& g) {
    const auto links = collapse_links(g);
    ForestBuilder fb(g.n());
    std::vector<std::pair<Vertex, std::size_t>> stack;
    std::vector<Candidate> deferred;
    Vertex next_root = 0;

    while (!fb.complete()) {
        if (stack.empty()) {
            while (!deferred.empty() && fb.marked(deferred.back().child)) deferred.pop_back();
            if (!deferred.empty()) {
                const auto c = deferred.back();
                deferred.pop_back();
                fb.attach(c.child, c.parent, c.sign);
                stack.emplace_back(c.child, 0);
            } else {
                while (fb.marked(next_root)) ++next_root;
                fb.root(next_root);
                stack.emplace_back(next_root, 0);
            }
        }
        auto& [u, idx] = stack.back();
        if (idx == links[u].size()) {
            stack.pop_back();
            continue;
        }
        const Link l = links[u][idx++];
        if (fb.marked(l.to)) continue;
        if (l.parallel) {
            deferred.push_back({u, l.to, l.sign});
            continue;
        }
        fb.attach(l.to, u, l.sign);
        stack.emplace_back(l.to, 0);
    }
    return std::move(fb).take();
}

SpanningForest build_forest(const SignedGraph& g, ForestStrategy strategy, Rng& rng) {
    switch (strategy) {
    case ForestStrategy::rs: return forest_rs(g, rng);
    case ForestStrategy::bfs: return forest_bfs(g);
    case ForestStrategy::dfs: return forest_dfs(g);
    }
    return forest_dfs(g);
}

SwitchSet switch_set_from_forest(const SpanningForest& forest) {
    SwitchSet w;
    w.members.assign(forest.parent.size(), false);
    for (Vertex v : forest.order) {
        const Vertex p = forest.parent[v];
        if (p == SpanningForest::no_parent) continue;
        w.members[v] = w.members[p] != (forest.parent_sign[v] == Sign::negative);
    }
    return w;
}

std::vector<Vertex> greedy_independent_set(const Graph& n, std::span<const Vertex> order) {
    std::vector<std::size_t> position(n.n());
    if (order.empty()) {
        std::iota(position.begin(), position.end(), std::size_t{0});
    } else {
        for (std::size_t t = 0; t < order.size(); ++t) position.at(order[t]) = t;
    }

    std::vector<std::size_t> degree(n.n());
    std::vector<bool> alive(n.n(), true);
    std::set<std::tuple<std::size_t, std::size_t, Vertex>> heap;
    for (Vertex v = 0; v < n.n(); ++v) {
        degree[v] = n.degree(v);
        heap.emplace(degree[v], position[v], v);
    }

    auto remove = [&](Vertex v) {
        alive[v] = false;
        heap.erase({degree[v], position[v], v});
    };

    std::vector<Vertex> chosen;
    while (!heap.empty()) {
        const Vertex v = std::get<2>(*heap.begin());
        chosen.push_back(v);
        remove(v);
        for (Vertex u : n.neighbors(v)) {
            if (alive[u]) remove(u);
        }
        for (Vertex u : n.neighbors(v)) {
            for (Vertex w : n.neighbors(u)) {
                if (!alive[w]) continue;
                heap.erase({degree[w], position[w], w});
                --degree[w];
                heap.emplace(degree[w], position[w], w);
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

namespace {

struct SwitchedNegatives {
    SwitchSet w;
    Subgraph negatives;
    Graph n_graph;
};

SwitchedNegatives negatives_after_switch(const SignedGraph& g, const SpanningForest& forest) {
    SwitchedNegatives out;
    out.w = switch_set_from_forest(forest);
    out.negatives = negative_subgraph(apply_switch(g, out.w));
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : out.negatives.graph.edges()) edges.emplace_back(e.u, e.v);
    out.n_graph = Graph(out.negatives.graph.n(), edges);
    return out;
}

HeuristicResult assemble(const SignedGraph& g, const SwitchedNegatives& sn, std::span<const Vertex> kept_in_n) {
    std::vector<bool> retained(g.n(), true);
    for (Vertex t : sn.negatives.to_parent) retained[t] = false;
    for (Vertex t : kept_in_n) retained[sn.negatives.to_parent[t]] = true;

    HeuristicResult r;
    r.n = g.n();
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!retained[v]) continue;
        r.retained.push_back(v);
        if (sn.w.contains(v)) r.reflection.push_back(v);
    }
    r.k = r.n - r.retained.size();
    return r;
}

} // namespace

HeuristicResult sga_from_forest(const SignedGraph& g, const SpanningForest& forest, std::span<const Vertex> order) {
    const auto sn = negatives_after_switch(g, forest);

    // Tie-break order inside N follows the order of the parent vertices.
    std::vector<Vertex> n_order(sn.n_graph.n());
    std::iota(n_order.begin(), n_order.end(), Vertex{0});
    if (!order.empty()) {
        std::vector<std::size_t> pos(g.n());
        for (std::size_t t = 0; t < order.size(); ++t) pos.at(order[t]) = t;
        std::stable_sort(n_order.begin(), n_order.end(), [&](Vertex a, Vertex b) {
            return pos[sn.negatives.to_parent[a]] < pos[sn.negatives.to_parent[b]];
        });
    }
    const auto independent = greedy_independent_set(sn.n_graph, n_order);
    return assemble(g, sn, independent);
}

HeuristicResult sga(const SignedGraph& g, ForestStrategy strategy, Rng& rng) {
    const auto start = std::chrono::steady_clock::now();
    const auto forest = build_forest(g, strategy, rng);
    HeuristicResult r = sga_from_forest(g, forest);
    r.strategy = strategy;
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

SignedGraph permute_vertices(const SignedGraph& g, std::span<const Vertex> new_to_old) {
    if (new_to_old.size() != g.n()) throw std::invalid_argument("permutation size does not match vertex count");
    std::vector<Vertex> old_to_new(g.n());
    std::vector<std::size_t> origin(g.n());
    for (Vertex t = 0; t < g.n(); ++t) {
        old_to_new.at(new_to_old[t]) = t;
        origin[t] = g.origin(new_to_old[t]);
    }
    std::vector<SignedEdge> edges;
    edges.reserve(g.m());
    for (const auto& e : g.edges()) edges.push_back({old_to_new[e.u], old_to_new[e.v], e.sign});
    return SignedGraph(g.n(), edges, std::move(origin));
}

namespace {

// Best of `repeats` runs of `once(graph, rng)`; run i > 0 sees the vertices
// relabelled by a random permutation drawn from Rng(seed + i).
template <class Once>
std::optional<HeuristicResult> best_of(const SignedGraph& g, std::size_t repeats, ForestStrategy strategy,
                                       std::uint64_t seed, Once once) {
    if (repeats == 0) throw std::invalid_argument("repeat count must be at least 1");
    const auto start = std::chrono::steady_clock::now();

    std::optional<HeuristicResult> best;
    for (std::size_t i = 0; i < repeats; ++i) {
        Rng rng(seed + i);
        std::optional<HeuristicResult> r;
        if (i == 0) {
            r = once(g, rng);
            if (!r) return std::nullopt;
        } else {
            std::vector<Vertex> perm(g.n());
            std::iota(perm.begin(), perm.end(), Vertex{0});
            rng.shuffle(std::span<Vertex>(perm));
            r = once(permute_vertices(g, perm), rng);
            if (!r) return std::nullopt;
            for (auto& v : r->retained) v = perm[v];
            for (auto& v : r->reflection) v = perm[v];
            std::sort(r->retained.begin(), r->retained.end());
            std::sort(r->reflection.begin(), r->reflection.end());
        }
        r->best_iteration = i;
        if (!best || r->retained.size() > best->retained.size()) best = std::move(r);
    }
    best->repeats = repeats;
    best->seed = seed;
    best->strategy = strategy;
    best->elapsed = std::chrono::steady_clock::now() - start;
    return best;
}

} // namespace

HeuristicResult sga_repeat(const SignedGraph& g, std::size_t repeats, ForestStrategy strategy, std::uint64_t seed) {
    return *best_of(g, repeats, strategy, seed, [&](const SignedGraph& h, Rng& rng) -> std::optional<HeuristicResult> {
        return sga(h, strategy, rng);
    });
}

std::optional<HeuristicResult> sga_vc_repeat(const SignedGraph& g, std::size_t repeats, ForestStrategy strategy,
                                             std::uint64_t seed, const VertexCoverBudget& budget) {
    return best_of(g, repeats, strategy, seed,
                   [&](const SignedGraph& h, Rng& rng) { return sga_vc(h, strategy, rng, budget); });
}

std::optional<HeuristicResult> sga_vc(const SignedGraph& g, ForestStrategy strategy, Rng& rng,
                                      const VertexCoverBudget& budget) {
    const auto start = std::chrono::steady_clock::now();
    const auto forest = build_forest(g, strategy, rng);
    const auto sn = negatives_after_switch(g, forest);

    std::optional<std::vector<Vertex>> cover;
    try {
        cover = minimum_vertex_cover(sn.n_graph, budget.max_cover, budget.stop);
    } catch (const SolveCancelled&) {
        return std::nullopt;
    }
    if (!cover) return std::nullopt;

    std::vector<bool> in_cover(sn.n_graph.n(), false);
    for (Vertex v : *cover) in_cover[v] = true;
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < sn.n_graph.n(); ++v) {
        if (!in_cover[v]) kept.push_back(v);
    }
    HeuristicResult r = assemble(g, sn, kept);
    r.strategy = strategy;
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

} // namespace refnet
