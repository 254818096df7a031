#include <doctest.h>

#include "fig1.hpp"
#include "generators.hpp"
#include "refnet/exact.hpp"
#include "refnet/sga.hpp"

using namespace refnet;

namespace {

SignedGraph from_edges(std::size_t n, std::vector<SignedEdge> edges) { return SignedGraph(n, edges); }

// Checks parent links against the graph and acyclicity through discovery order.
void check_forest(const SignedGraph& g, const SpanningForest& f) {
    REQUIRE(f.order.size() == g.n());
    std::vector<std::size_t> pos(g.n(), g.n());
    for (std::size_t t = 0; t < f.order.size(); ++t) pos[f.order[t]] = t;
    for (Vertex v = 0; v < g.n(); ++v) CHECK(pos[v] < g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        const Vertex p = f.parent[v];
        if (p == SpanningForest::no_parent) {
            CHECK(std::find(f.roots.begin(), f.roots.end(), v) != f.roots.end());
            continue;
        }
        CHECK(pos[p] < pos[v]);
        CHECK(g.has_edge(std::min(p, v), std::max(p, v), f.parent_sign[v]));
    }
    std::size_t comps = 0;
    std::vector<std::pair<Vertex, Vertex>> und;
    for (const auto& e : g.edges()) und.emplace_back(e.u, e.v);
    connected_components(Graph(g.n(), und), &comps);
    CHECK(f.roots.size() == comps);
}

bool forest_positive_after_switch(const SpanningForest& f, const SwitchSet& w) {
    for (Vertex v = 0; v < f.parent.size(); ++v) {
        const Vertex p = f.parent[v];
        if (p == SpanningForest::no_parent) continue;
        const bool crossing = w.contains(v) != w.contains(p);
        if ((f.parent_sign[v] == Sign::negative) != crossing) return false;
    }
    return true;
}

} // namespace

TEST_CASE("strategy names") {
    CHECK(to_string(ForestStrategy::rs) == "RS");
    CHECK(parse_strategy("dfs") == ForestStrategy::dfs);
    CHECK(parse_strategy("BFS") == ForestStrategy::bfs);
    CHECK_FALSE(parse_strategy("xyz"));
}

TEST_CASE("random search forest") {
    Rng rng(1);
    const auto single = forest_rs(SignedGraph(1, std::vector<SignedEdge>{}), rng);
    CHECK(single.roots == std::vector<Vertex>{0});

    const auto tree = from_edges(5, {{0, 1, Sign::negative}, {1, 2, Sign::positive}, {1, 3, Sign::positive}, {3, 4, Sign::negative}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r(seed);
        const auto f = forest_rs(tree, r);
        check_forest(tree, f);
        CHECK(f.edge_count() == 4);
    }

    const auto g = fig1_graph();
    Rng a(42), b(42);
    const auto fa = forest_rs(g, a), fb = forest_rs(g, b);
    CHECK(fa.parent == fb.parent);
    CHECK(fa.order == fb.order);
}

TEST_CASE("breadth-first forest") {
    const auto path = from_edges(3, {{0, 1, Sign::positive}, {1, 2, Sign::negative}});
    const auto f = forest_bfs(path);
    check_forest(path, f);
    CHECK(f.edge_count() == 2);
    CHECK(f.roots == std::vector<Vertex>{1});

    // Components {0,1} and {2,3,4}; vertex 4 has degree 2, the rest degree 1.
    const auto two = from_edges(5, {{0, 1, Sign::positive}, {2, 4, Sign::positive}, {3, 4, Sign::negative}});
    const auto t = forest_bfs(two);
    check_forest(two, t);
    CHECK(t.roots == std::vector<Vertex>{4, 0});

    const auto empty = SignedGraph(3, std::vector<SignedEdge>{});
    CHECK(forest_bfs(empty).roots == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("depth-first forest") {
    const auto c4 = from_edges(4, {{0, 1, Sign::positive}, {1, 2, Sign::positive}, {2, 3, Sign::positive}, {0, 3, Sign::positive}});
    const auto f = forest_dfs(c4);
    CHECK(f.edge_count() == 3);
    CHECK(f.parent[1] == 0);
    CHECK(f.parent[2] == 1);
    CHECK(f.parent[3] == 2);

    std::vector<SignedEdge> k4;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) k4.push_back({u, v, Sign::negative});
    const auto fk = forest_dfs(SignedGraph(4, k4));
    CHECK(fk.parent == std::vector<Vertex>{SpanningForest::no_parent, 0, 1, 2});

    const auto forest = from_edges(5, {{0, 2, Sign::negative}, {1, 3, Sign::positive}, {3, 4, Sign::negative}});
    const auto ff = forest_dfs(forest);
    CHECK(ff.edge_count() == 3);
    CHECK(ff.roots == std::vector<Vertex>{0, 1});
}

TEST_CASE("parallel pairs are a last resort") {
    // 0-1 is a +/- pair; 1 is also reachable through 2.
    const auto g = from_edges(3, {{0, 1, Sign::positive}, {0, 1, Sign::negative}, {0, 2, Sign::negative}, {1, 2, Sign::negative}});
    for (auto s : all_strategies) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Rng rng(seed);
            const auto f = build_forest(g, s, rng);
            check_forest(g, f);
            const bool uses_pair = (f.parent[1] == 0) || (f.parent[0] == 1);
            CHECK_FALSE(uses_pair);
        }
    }
    // Only the pair connects 0 and 1: its positive edge is used.
    const auto h = from_edges(2, {{0, 1, Sign::positive}, {0, 1, Sign::negative}});
    for (auto s : all_strategies) {
        Rng rng(0);
        const auto f = build_forest(h, s, rng);
        CHECK(f.edge_count() == 1);
        const Vertex child = f.parent[0] == SpanningForest::no_parent ? 1 : 0;
        CHECK(f.parent_sign[child] == Sign::positive);
    }
}

TEST_CASE("switch set from a forest") {
    SpanningForest f;
    f.parent = {SpanningForest::no_parent, 0, 0, 1};
    f.parent_sign = {Sign::positive, Sign::negative, Sign::positive, Sign::negative};
    f.roots = {0};
    f.order = {0, 1, 2, 3};
    CHECK(switch_set_from_forest(f).vertices() == std::vector<Vertex>{1});

    f.parent_sign = {Sign::positive, Sign::positive, Sign::positive, Sign::positive};
    CHECK(switch_set_from_forest(f).vertices().empty());

    SpanningForest star;
    star.parent = {SpanningForest::no_parent, 0, 0, 0};
    star.parent_sign = {Sign::positive, Sign::negative, Sign::negative, Sign::negative};
    star.roots = {0};
    star.order = {0, 1, 2, 3};
    CHECK(switch_set_from_forest(star).vertices() == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("depth-first forest of the example") {
    const auto f = forest_dfs(fig1_graph());
    CHECK(f.parent[1] == 0);
    CHECK(f.parent_sign[1] == Sign::negative);
    CHECK(f.parent[2] == 0);
    CHECK(f.parent_sign[2] == Sign::positive);
    CHECK(f.parent[3] == 1);
    CHECK(f.parent_sign[3] == Sign::negative);
    CHECK(switch_set_from_forest(f).vertices() == std::vector<Vertex>{1});
}

TEST_CASE("greedy independent set") {
    // Path 1-4-3 relabelled as 0-2-1.
    const std::vector<std::pair<Vertex, Vertex>> path{{0, 2}, {1, 2}};
    CHECK(greedy_independent_set(Graph(3, path)) == std::vector<Vertex>{0, 1});
    CHECK(greedy_independent_set(Graph(0, {})).empty());
    CHECK(greedy_independent_set(testgen::complete_graph(3)) == std::vector<Vertex>{0});
    const std::vector<Vertex> order{2, 0, 1};
    CHECK(greedy_independent_set(testgen::complete_graph(3), order) == std::vector<Vertex>{2});

    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        const auto g = testgen::random_graph(rng, 1 + rng.below(12), 0.3);
        const auto s = greedy_independent_set(g);
        CHECK(is_independent_set(g, s));
        std::vector<bool> in(g.n(), false);
        for (Vertex v : s) in[v] = true;
        for (Vertex v = 0; v < g.n(); ++v) {
            if (in[v]) continue;
            bool blocked = false;
            for (Vertex u : g.neighbors(v)) blocked = blocked || in[u];
            CHECK(blocked);
        }
    }
}

TEST_CASE("heuristic on the example") {
    Rng rng(1);
    const auto r = sga(fig1_graph(), ForestStrategy::dfs, rng);
    CHECK(r.retained == std::vector<Vertex>{0, 1, 2});
    CHECK(r.k == 1);
    CHECK(r.k == brute_force_mbd(fig1_graph()).first);
    CHECK(apply_switch(induced_subgraph(fig1_graph(), r.retained).graph,
                       SwitchSet::from_vertices(3, std::vector<Vertex>{1}))
              .negative_edge_count() == 0);
    CHECK(r.reflection == std::vector<Vertex>{1});

    CHECK(sga_repeat(fig1_graph(), 80, ForestStrategy::dfs, 1).k == 1);
    CHECK(sga_repeat(fig1_graph(), 80, ForestStrategy::rs, 1).k == 1);
    // Vertex 4 is the unique maximum-degree root, so every BFS forest is the
    // same up to relabelling and leaves two disjoint negative edges.
    CHECK(sga_repeat(fig1_graph(), 80, ForestStrategy::bfs, 1).k == 2);
}

TEST_CASE("balanced and edgeless graphs keep every vertex") {
    Rng gen(12);
    for (int t = 0; t < 50; ++t) {
        const auto g = testgen::planted_balanced(gen, 1 + gen.below(15), 0.3);
        for (auto s : all_strategies) {
            Rng rng(t);
            CHECK(sga(g, s, rng).k == 0);
        }
    }
    Rng rng(0);
    CHECK(sga(SignedGraph(5, std::vector<SignedEdge>{}), ForestStrategy::rs, rng).retained.size() == 5);
}

TEST_CASE("repetition") {
    Rng gen(31);
    for (int t = 0; t < 40; ++t) {
        const auto g = testgen::random_signed_graph(gen, 12, 0.3, 0.05);
        for (auto s : all_strategies) {
            Rng rng(t);
            const auto one = sga(g, s, rng);
            const auto rep1 = sga_repeat(g, 1, s, t);
            CHECK(one.retained == rep1.retained);
            std::size_t prev = 0;
            for (std::size_t r : {1, 2, 3, 10}) {
                const auto res = sga_repeat(g, r, s, t);
                CHECK(res.retained.size() >= prev);
                prev = res.retained.size();
                CHECK(is_balanced(induced_subgraph(g, res.retained).graph).balanced());
                CHECK(apply_switch(induced_subgraph(g, res.retained).graph,
                                   SwitchSet::from_vertices(res.retained.size(), [&] {
                                       std::vector<Vertex> local;
                                       for (std::size_t i = 0; i < res.retained.size(); ++i) {
                                           if (std::binary_search(res.reflection.begin(), res.reflection.end(), res.retained[i]))
                                               local.push_back(i);
                                       }
                                       return local;
                                   }()))
                          .negative_edge_count() == 0);
            }
            const auto again = sga_repeat(g, 10, s, t);
            CHECK(again.retained == sga_repeat(g, 10, s, t).retained);
        }
    }
}

TEST_CASE("permuting vertices") {
    const auto g = fig1_graph();
    const std::vector<Vertex> perm{3, 1, 0, 2};
    const auto p = permute_vertices(g, perm);
    CHECK(p.has_edge(2, 3, Sign::positive)); // old 0-2
    CHECK(p.has_edge(0, 3, Sign::positive)); // old 3-2
    CHECK(p.has_edge(0, 3, Sign::negative));
    CHECK(p.origin(0) == 3);
}

TEST_CASE("vertex cover variant") {
    SUBCASE("no negative edges") {
        const auto g = from_edges(3, {{0, 1, Sign::positive}, {1, 2, Sign::positive}});
        Rng rng(0);
        const auto r = sga_vc(g, ForestStrategy::dfs, rng);
        REQUIRE(r);
        CHECK(r->k == 0);
    }
    SUBCASE("negative triangle") {
        // Every pair carries both signs, so the forest is positive, W is empty and N is a triangle.
        const auto g = from_edges(3, {{0, 1, Sign::positive}, {0, 1, Sign::negative}, {1, 2, Sign::positive},
                                      {1, 2, Sign::negative}, {0, 2, Sign::positive}, {0, 2, Sign::negative}});
        Rng a(0), b(0);
        const auto vc = sga_vc(g, ForestStrategy::dfs, a);
        REQUIRE(vc);
        CHECK(vc->retained.size() == 1);
        CHECK(sga(g, ForestStrategy::dfs, b).retained.size() == vc->retained.size());
    }
    SUBCASE("negative path of three") {
        const auto g = from_edges(3, {{0, 1, Sign::positive}, {0, 1, Sign::negative}, {1, 2, Sign::positive}, {1, 2, Sign::negative}});
        Rng rng(0);
        const auto r = sga_vc(g, ForestStrategy::bfs, rng);
        REQUIRE(r);
        CHECK(r->retained == std::vector<Vertex>{0, 2});
    }
    SUBCASE("budget exhausted") {
        const auto g = from_edges(3, {{0, 1, Sign::positive}, {0, 1, Sign::negative}, {1, 2, Sign::positive}, {1, 2, Sign::negative}});
        Rng rng(0);
        VertexCoverBudget budget;
        budget.max_cover = 0;
        CHECK_FALSE(sga_vc(g, ForestStrategy::dfs, rng, budget));
    }
    SUBCASE("never worse than greedy") {
        Rng gen(4);
        for (int t = 0; t < 100; ++t) {
            const auto g = testgen::random_signed_graph(gen, 14, 0.3, 0.05);
            for (auto s : all_strategies) {
                Rng a(t), b(t);
                const auto greedy = sga(g, s, a);
                const auto vc = sga_vc(g, s, b);
                REQUIRE(vc);
                CHECK(vc->retained.size() >= greedy.retained.size());
                CHECK(is_balanced(induced_subgraph(g, vc->retained).graph).balanced());
            }
        }
    }
}
