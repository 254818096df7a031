#include "refnet/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace refnet {

SubdividedGraph subdivide_positive(const SignedGraph& g) {
    SubdividedGraph out;
    out.original_count = g.n();
    out.origin.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) out.origin[v] = {false, v, v};

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : g.edges()) {
        if (e.sign == Sign::negative) {
            edges.emplace_back(e.u, e.v);
            continue;
        }
        const Vertex w = out.origin.size();
        out.origin.push_back({true, e.u, e.v});
        edges.emplace_back(e.u, w);
        edges.emplace_back(w, e.v);
    }
    out.base = Graph(out.origin.size(), edges);
    return out;
}

namespace {

void check_stop(const std::stop_token& stop) {
    if (stop.stop_requested()) throw SolveCancelled{};
}

// Unit vertex capacities on the live part of a graph. Vertex u becomes
// in-node 2u and out-node 2u+1; the source feeds every in-node of the first
// terminal class and every out-node of the second class drains to the sink.
class VertexCutFlow {
public:
    VertexCutFlow(const Graph& h, const std::vector<bool>& live) : h_(h), live_(live) {
        const std::size_t nodes = 2 * h.n();
        start_.assign(nodes + 1, 0);
        for (Vertex u = 0; u < h.n(); ++u) {
            if (!live[u]) continue;
            start_[2 * u] += 1;
            start_[2 * u + 1] += 1;
            for (Vertex w : h.neighbors(u)) {
                if (!live[w]) continue;
                start_[2 * u + 1] += 1; // out_u -> in_w
                start_[2 * w] += 1;     // residual in_w -> out_u
            }
        }
        std::exclusive_scan(start_.begin(), start_.end(), start_.begin(), std::size_t{0});
        head_.resize(start_.back());
        cap_.resize(start_.back());
        rev_.resize(start_.back());
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        auto add = [&](std::size_t a, std::size_t b, int c) {
            const std::size_t x = fill[a]++, y = fill[b]++;
            head_[x] = b;
            cap_[x] = c;
            rev_[x] = y;
            head_[y] = a;
            cap_[y] = 0;
            rev_[y] = x;
        };
        for (Vertex u = 0; u < h.n(); ++u) {
            if (!live[u]) continue;
            add(2 * u, 2 * u + 1, 1);
            for (Vertex w : h.neighbors(u)) {
                if (live[w]) add(2 * u + 1, 2 * w, infinite);
            }
        }
        flow_.assign(head_.size(), 0);
        parent_arc_.assign(nodes, none);
        seen_.assign(nodes, 0);
    }

    /// Max flow from `sources` to `sinks`, stopping once it exceeds `limit`.
    /// When the value is within the limit, `cut` receives a minimum vertex cut.
    std::size_t solve(std::span<const Vertex> sources, const std::vector<char>& is_sink, std::size_t limit,
                      std::vector<Vertex>& cut) {
        std::fill(flow_.begin(), flow_.end(), 0);
        std::size_t value = 0;
        while (value <= limit) {
            const std::size_t end = search(sources, is_sink);
            if (end == none) break;
            for (std::size_t node = end; parent_arc_[node] != none;) {
                const std::size_t a = parent_arc_[node];
                flow_[a] += 1;
                flow_[rev_[a]] -= 1;
                node = head_[rev_[a]];
            }
            ++value;
        }
        if (value > limit) return value;
        cut.clear();
        for (Vertex u = 0; u < h_.n(); ++u) {
            if (live_[u] && seen_[2 * u] == stamp_ && seen_[2 * u + 1] != stamp_) cut.push_back(u);
        }
        return value;
    }

private:
    static constexpr int infinite = std::numeric_limits<int>::max() / 2;
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    // BFS in the residual network; returns the out-node of a reached sink or none.
    std::size_t search(std::span<const Vertex> sources, const std::vector<char>& is_sink) {
        ++stamp_;
        queue_.clear();
        for (Vertex s : sources) {
            const std::size_t node = 2 * s;
            if (seen_[node] == stamp_) continue;
            seen_[node] = stamp_;
            parent_arc_[node] = none;
            queue_.push_back(node);
        }
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const std::size_t node = queue_[qi];
            if ((node & 1) && is_sink[node / 2]) return node;
            for (std::size_t a = start_[node]; a < start_[node + 1]; ++a) {
                if (cap_[a] - flow_[a] <= 0) continue;
                const std::size_t next = head_[a];
                if (seen_[next] == stamp_) continue;
                seen_[next] = stamp_;
                parent_arc_[next] = a;
                queue_.push_back(next);
            }
        }
        return none;
    }

    const Graph& h_;
    const std::vector<bool>& live_;
    std::vector<std::size_t> start_, head_, rev_;
    std::vector<int> cap_, flow_;
    std::vector<std::size_t> parent_arc_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t stamp_ = 0;
    std::vector<std::size_t> queue_;
};

// Iterative compression on one graph. The invariant OCT(prefix) >= k holds
// before every insertion, so the newly inserted vertex is never part of a
// compressed solution; it is fixed to the left side.
class OctCompressor {
public:
    OctCompressor(const Graph& h, std::stop_token stop, OctStats* stats)
        : h_(h), stop_(std::move(stop)), stats_(stats), present_(h.n(), false), in_x_(h.n(), false) {}

    std::optional<std::vector<Vertex>> run(std::span<const Vertex> order, std::size_t k_max) {
        std::size_t k = 0;
        for (Vertex v : order) {
            present_[v] = true;
            x_.push_back(v);
            in_x_[v] = true;
            if (x_.size() <= k) continue;
            check_stop(stop_);
            if (!compress(k)) {
                ++k;
                if (k > k_max) return std::nullopt;
            }
        }
        return x_;
    }

private:
    enum : std::uint8_t { deleted = 0, left = 1, right = 2 };

    bool compress(std::size_t k) {
        if (stats_) ++stats_->compressions;
        const Vertex fresh = x_.back();
        const std::vector<Vertex> others(x_.begin(), x_.end() - 1);

        std::vector<bool> live(h_.n(), false);
        for (Vertex u = 0; u < h_.n(); ++u) live[u] = present_[u] && !in_x_[u];
        const std::vector<int> color = two_coloring(h_, live);
        if (color.size() != h_.n()) throw std::logic_error("transversal does not leave a bipartite graph");
        VertexCutFlow flow(h_, live);

        // X vertices with their live neighbors and their mutual adjacency.
        std::vector<Vertex> xs = others;
        xs.push_back(fresh);
        const std::size_t t = xs.size();
        std::vector<std::vector<Vertex>> outside(t);
        std::vector<std::vector<std::size_t>> inside(t);
        for (std::size_t i = 0; i < t; ++i) {
            for (Vertex u : h_.neighbors(xs[i])) {
                if (live[u]) outside[i].push_back(u);
            }
            for (std::size_t j = 0; j < t; ++j) {
                if (j != i && h_.has_edge(xs[i], xs[j])) inside[i].push_back(j);
            }
        }

        std::vector<std::uint8_t> side(t, deleted);
        side[t - 1] = left;
        std::vector<int> direction(others.size(), 1);
        std::vector<std::uint8_t> tag(h_.n(), 0); // bit 0: same as coloring, bit 1: opposite
        std::vector<Vertex> touched, sources, cut;
        std::vector<char> is_sink(h_.n(), 0);

        // Reflected ternary Gray code over the old transversal, starting with all deleted.
        while (true) {
            if (try_partition(k, xs, side, color, outside, inside, flow, tag, touched, sources, is_sink, cut)) {
                return true;
            }
            std::size_t j = 0;
            while (j < others.size()) {
                const int next = static_cast<int>(side[j]) + direction[j];
                if (next >= 0 && next <= 2) break;
                direction[j] = -direction[j];
                ++j;
            }
            if (j == others.size()) return false;
            side[j] = static_cast<std::uint8_t>(side[j] + direction[j]);
        }
    }

    bool try_partition(std::size_t k, const std::vector<Vertex>& xs, const std::vector<std::uint8_t>& side,
                       const std::vector<int>& color, const std::vector<std::vector<Vertex>>& outside,
                       const std::vector<std::vector<std::size_t>>& inside, VertexCutFlow& flow,
                       std::vector<std::uint8_t>& tag, std::vector<Vertex>& touched, std::vector<Vertex>& sources,
                       std::vector<char>& is_sink, std::vector<Vertex>& cut) {
        std::size_t deleted_count = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (side[i] == deleted) {
                ++deleted_count;
                continue;
            }
            for (std::size_t j : inside[i]) {
                if (side[j] == side[i]) return false;
            }
        }
        if (deleted_count > k) return false;
        const std::size_t budget = k - deleted_count;

        for (Vertex u : touched) {
            tag[u] = 0;
            is_sink[u] = 0;
        }
        touched.clear();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (side[i] == deleted) continue;
            const int want = side[i] == left ? 1 : 0;
            for (Vertex u : outside[i]) {
                if (tag[u] == 0) touched.push_back(u);
                tag[u] |= (want == color[u]) ? 1 : 2;
            }
        }
        std::size_t forced = 0;
        sources.clear();
        for (Vertex u : touched) {
            if (tag[u] == 3) ++forced;
            if (tag[u] & 1) sources.push_back(u);
            if (tag[u] & 2) is_sink[u] = 1;
        }
        if (forced > budget) return false;

        check_stop(stop_);
        if (stats_) ++stats_->partitions;
        if (flow.solve(sources, is_sink, budget, cut) > budget) return false;

        for (Vertex x : xs) in_x_[x] = false;
        x_.clear();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (side[i] == deleted) x_.push_back(xs[i]);
        }
        x_.insert(x_.end(), cut.begin(), cut.end());
        for (Vertex x : x_) in_x_[x] = true;
        return true;
    }

    const Graph& h_;
    std::stop_token stop_;
    OctStats* stats_;
    std::vector<bool> present_;
    std::vector<bool> in_x_;
    std::vector<Vertex> x_;
};

std::vector<bool> two_core(const Graph& h) {
    std::vector<bool> keep(h.n(), true);
    std::vector<std::size_t> degree(h.n());
    std::vector<Vertex> peel;
    for (Vertex v = 0; v < h.n(); ++v) {
        degree[v] = h.degree(v);
        if (degree[v] < 2) {
            keep[v] = false;
            peel.push_back(v);
        }
    }
    while (!peel.empty()) {
        const Vertex v = peel.back();
        peel.pop_back();
        for (Vertex u : h.neighbors(v)) {
            if (keep[u] && --degree[u] < 2) {
                keep[u] = false;
                peel.push_back(u);
            }
        }
    }
    return keep;
}

} // namespace

std::optional<std::vector<Vertex>> minimum_odd_cycle_transversal(const Graph& h, std::size_t k_max,
                                                                 std::stop_token stop, OctStats* stats,
                                                                 std::span<const Vertex> insertion_order) {
    std::vector<std::size_t> rank(h.n());
    if (insertion_order.empty()) {
        std::iota(rank.begin(), rank.end(), std::size_t{0});
    } else {
        if (insertion_order.size() != h.n()) throw std::invalid_argument("insertion order is not a permutation");
        for (std::size_t t = 0; t < insertion_order.size(); ++t) rank.at(insertion_order[t]) = t;
    }

    std::vector<Vertex> core_to_h;
    const Graph core = h.induced(two_core(h), &core_to_h);
    std::size_t comp_count = 0;
    const auto comp = connected_components(core, &comp_count);
    std::vector<std::vector<Vertex>> members(comp_count);
    for (Vertex v = 0; v < core.n(); ++v) members[comp[v]].push_back(v);

    std::vector<Vertex> result;
    for (auto& group : members) {
        if (group.size() < 3) continue;
        std::vector<bool> keep(core.n(), false);
        for (Vertex v : group) keep[v] = true;
        std::vector<Vertex> piece_to_core;
        const Graph piece = core.induced(keep, &piece_to_core);
        if (is_bipartite(piece)) continue;

        std::vector<Vertex> order(piece.n());
        std::iota(order.begin(), order.end(), Vertex{0});
        std::sort(order.begin(), order.end(),
                  [&](Vertex a, Vertex b) { return rank[core_to_h[piece_to_core[a]]] < rank[core_to_h[piece_to_core[b]]]; });

        OctCompressor compressor(piece, stop, stats);
        const auto x = compressor.run(order, k_max - result.size());
        if (!x) return std::nullopt;
        for (Vertex v : *x) result.push_back(core_to_h[piece_to_core[v]]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::optional<std::vector<Vertex>> odd_cycle_transversal(const Graph& h, std::size_t k, std::stop_token stop,
                                                         OctStats* stats) {
    return minimum_odd_cycle_transversal(h, k, std::move(stop), stats);
}

const char* to_string(ExactStatus s) {
    switch (s) {
    case ExactStatus::optimal: return "optimal";
    case ExactStatus::timeout: return "timeout";
    case ExactStatus::limit_exceeded: return "limit_exceeded";
    }
    return "?";
}

ExactResult mbd_exact(const SignedGraph& g, std::size_t k_max, std::stop_token stop) {
    const auto start = std::chrono::steady_clock::now();
    ExactResult r;
    try {
        const auto sub = subdivide_positive(g);

        // Each original vertex v is followed by the subdivision vertices of its edges to lower vertices.
        std::vector<std::vector<Vertex>> after(g.n());
        for (Vertex w = sub.original_count; w < sub.origin.size(); ++w) after[sub.origin[w].v].push_back(w);
        std::vector<Vertex> order;
        order.reserve(sub.origin.size());
        for (Vertex v = 0; v < g.n(); ++v) {
            order.push_back(v);
            order.insert(order.end(), after[v].begin(), after[v].end());
        }

        OctStats stats;
        const auto x = minimum_odd_cycle_transversal(sub.base, k_max, stop, &stats, order);
        r.nodes_explored = stats.partitions;
        if (!x) {
            r.status = ExactStatus::limit_exceeded;
            r.k = k_max + 1;
        } else {
            for (Vertex w : *x) r.deletion.push_back(sub.origin[w].u);
            std::sort(r.deletion.begin(), r.deletion.end());
            r.deletion.erase(std::unique(r.deletion.begin(), r.deletion.end()), r.deletion.end());
            if (!is_balanced(remove_vertices(g, r.deletion).graph).balanced()) {
                throw std::logic_error("replaced transversal does not balance the graph");
            }
            r.k = r.deletion.size();
            r.status = ExactStatus::optimal;
        }
    } catch (const SolveCancelled&) {
        r.status = ExactStatus::timeout;
        r.deletion.clear();
        r.k = 0;
    }
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

namespace {

// Branching vertex cover with an undo log over a shared live mask.
class CoverSearch {
public:
    CoverSearch(const Graph& h, std::stop_token stop) : h_(h), stop_(std::move(stop)), alive_(h.n(), true), degree_(h.n()) {
        for (Vertex v = 0; v < h.n(); ++v) {
            degree_[v] = h.degree(v);
            edges_ += degree_[v];
        }
        edges_ /= 2;
    }

    std::optional<std::vector<Vertex>> solve(std::size_t k) {
        cover_.clear();
        if (!search(static_cast<long>(k))) return std::nullopt;
        std::vector<Vertex> out = cover_;
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void remove(Vertex v) {
        alive_[v] = false;
        log_.push_back(v);
        for (Vertex u : h_.neighbors(v)) {
            if (!alive_[u]) continue;
            --degree_[u];
            --edges_;
        }
    }

    void undo_to(std::size_t mark, std::size_t cover_mark) {
        while (log_.size() > mark) {
            const Vertex v = log_.back();
            log_.pop_back();
            for (Vertex u : h_.neighbors(v)) {
                if (!alive_[u]) continue;
                ++degree_[u];
                ++edges_;
            }
            alive_[v] = true;
        }
        cover_.resize(cover_mark);
    }

    void take(Vertex v) {
        cover_.push_back(v);
        remove(v);
    }

    // Cycles are all that remain when every live degree is 2.
    long cycle_cover() {
        long need = 0;
        const std::size_t mark = log_.size();
        for (Vertex s = 0; s < h_.n(); ++s) {
            if (!alive_[s] || degree_[s] == 0) continue;
            std::vector<Vertex> cycle{s};
            remove(s);
            for (Vertex cur = s;;) {
                Vertex next = cur;
                for (Vertex u : h_.neighbors(cur)) {
                    if (alive_[u]) {
                        next = u;
                        break;
                    }
                }
                if (next == cur) break;
                cycle.push_back(next);
                remove(next);
                cur = next;
            }
            need += static_cast<long>((cycle.size() + 1) / 2);
            for (std::size_t i = 0; i < cycle.size(); i += 2) pending_.push_back(cycle[i]);
        }
        // Restore the mask; the caller records pending_ in the cover.
        while (log_.size() > mark) {
            const Vertex v = log_.back();
            log_.pop_back();
            for (Vertex u : h_.neighbors(v)) {
                if (!alive_[u]) continue;
                ++degree_[u];
                ++edges_;
            }
            alive_[v] = true;
        }
        return need;
    }

    bool search(long k) {
        check_stop(stop_);
        const std::size_t mark = log_.size(), cover_mark = cover_.size();

        // Reductions until none applies.
        for (bool changed = true; changed;) {
            changed = false;
            for (Vertex v = 0; v < h_.n() && k >= 0; ++v) {
                if (!alive_[v]) continue;
                if (degree_[v] == 0) {
                    remove(v);
                    changed = true;
                } else if (degree_[v] == 1) {
                    for (Vertex u : h_.neighbors(v)) {
                        if (alive_[u]) {
                            take(u);
                            break;
                        }
                    }
                    --k;
                    changed = true;
                } else if (static_cast<long>(degree_[v]) > k) {
                    take(v);
                    --k;
                    changed = true;
                }
            }
        }
        if (k < 0) {
            undo_to(mark, cover_mark);
            return false;
        }
        if (edges_ == 0) return true;

        Vertex best = h_.n();
        for (Vertex v = 0; v < h_.n(); ++v) {
            if (alive_[v] && (best == h_.n() || degree_[v] > degree_[best])) best = v;
        }
        const std::size_t max_degree = degree_[best];
        if (edges_ > static_cast<std::size_t>(k) * max_degree) {
            undo_to(mark, cover_mark);
            return false;
        }
        if (max_degree == 2) {
            pending_.clear();
            const long need = cycle_cover();
            if (need > k) {
                undo_to(mark, cover_mark);
                return false;
            }
            const auto chosen = pending_;
            for (Vertex v : chosen) take(v);
            return true;
        }

        const std::size_t inner = log_.size(), inner_cover = cover_.size();
        take(best);
        if (search(k - 1)) return true;
        undo_to(inner, inner_cover);

        std::vector<Vertex> nbs;
        for (Vertex u : h_.neighbors(best)) {
            if (alive_[u]) nbs.push_back(u);
        }
        if (static_cast<long>(nbs.size()) <= k) {
            for (Vertex u : nbs) take(u);
            if (search(k - static_cast<long>(nbs.size()))) return true;
        }
        undo_to(mark, cover_mark);
        return false;
    }

    const Graph& h_;
    std::stop_token stop_;
    std::vector<bool> alive_;
    std::vector<std::size_t> degree_;
    std::size_t edges_ = 0;
    std::vector<Vertex> log_;
    std::vector<Vertex> cover_;
    std::vector<Vertex> pending_;
};

std::size_t greedy_matching_size(const Graph& h) {
    std::vector<bool> used(h.n(), false);
    std::size_t size = 0;
    for (auto [u, v] : h.edges()) {
        if (used[u] || used[v]) continue;
        used[u] = used[v] = true;
        ++size;
    }
    return size;
}

} // namespace

std::optional<std::vector<Vertex>> vertex_cover(const Graph& h, std::size_t k, std::stop_token stop) {
    CoverSearch search(h, std::move(stop));
    return search.solve(k);
}

std::optional<std::vector<Vertex>> minimum_vertex_cover(const Graph& h, std::size_t k_max, std::stop_token stop) {
    std::size_t comp_count = 0;
    const auto comp = connected_components(h, &comp_count);
    std::vector<std::vector<Vertex>> members(comp_count);
    for (Vertex v = 0; v < h.n(); ++v) members[comp[v]].push_back(v);

    std::vector<Vertex> result;
    for (const auto& group : members) {
        if (group.size() < 2) continue;
        std::vector<bool> keep(h.n(), false);
        for (Vertex v : group) keep[v] = true;
        std::vector<Vertex> to_h;
        const Graph piece = h.induced(keep, &to_h);
        const std::size_t remaining = k_max - result.size();
        std::optional<std::vector<Vertex>> cover;
        for (std::size_t k = greedy_matching_size(piece); k <= remaining && !cover; ++k) {
            cover = vertex_cover(piece, k, stop);
        }
        if (!cover) return std::nullopt;
        for (Vertex v : *cover) result.push_back(to_h[v]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

// Calls accept(subset) for subsets of {0..n-1} by increasing size, lexicographic within a size.
template <class Accept>
std::pair<std::size_t, std::vector<Vertex>> first_subset(std::size_t n, Accept accept) {
    for (std::size_t size = 0; size <= n; ++size) {
        std::vector<Vertex> pick(size);
        std::iota(pick.begin(), pick.end(), Vertex{0});
        while (true) {
            if (accept(pick)) return {size, pick};
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return {n, {}};
}

} // namespace

std::pair<std::size_t, std::vector<Vertex>> brute_force_mbd(const SignedGraph& g) {
    return first_subset(g.n(), [&](const std::vector<Vertex>& removed) {
        return is_balanced(remove_vertices(g, removed).graph).balanced();
    });
}

std::pair<std::size_t, std::vector<Vertex>> brute_force_oct(const Graph& h) {
    return first_subset(h.n(), [&](const std::vector<Vertex>& removed) {
        std::vector<bool> alive(h.n(), true);
        for (Vertex v : removed) alive[v] = false;
        return is_bipartite(h, alive);
    });
}

} // namespace refnet
