#include "oracles.hpp"

#include "signu/errors.hpp"
#include "signu/graph_io.hpp"
#include "signu/signed_graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

using namespace signu;

namespace {

SignedGraph triangle(Parity a, Parity b, Parity c) {
    return SignedGraph::build(3, {{1, 2, a}, {2, 3, b}, {1, 3, c}});
}

const Parity E = Parity::even;
const Parity O = Parity::odd;

std::map<std::vector<EdgeId>, int> cycle_parities(const SignedGraph& g) {
    std::map<std::vector<EdgeId>, int> out;
    for (const auto& c : oracle::all_cycles(g)) out[c.edges] = c.odd_count % 2;
    return out;
}

} // namespace

TEST_CASE("resign flips exactly the cut") {
    SignedGraph k2 = make_k2eq();
    CHECK(resign(k2, {}) == k2);
    CHECK(resign(k2, {1, 2}) == k2);
    SignedGraph r = resign(k2, {1});
    CHECK(r.edge(0).odd());
    CHECK_FALSE(r.edge(1).odd());
    CHECK(sign_equivalent(k2, r).has_value());
    CHECK_THROWS_AS(resign(k2, {7}), InputError);

    SignedGraph dp = make_double_prism();
    VertexSet u{1, 5};
    CHECK(resign(resign(dp, u), u) == dp);
}

TEST_CASE("walk parity counts odd edges with multiplicity") {
    CHECK(walk_parity(triangle(E, E, E), Walk{{1, 2, 3, 1}, {0, 1, 2}}) == E);
    CHECK(walk_parity(make_k2eq(), Walk{{1, 2, 1}, {0, 1}}) == O);
    SignedGraph p = SignedGraph::build(2, {{1, 2, O}});
    CHECK(walk_parity(p, Walk{{1, 2, 1}, {0, 0}}) == E);
    CHECK_THROWS_AS(walk_parity(p, Walk{{1, 1}, {0}}), InputError);
}

TEST_CASE("bipartiteness") {
    CHECK(is_bipartite(SignedGraph::build(4, {{1, 2, E}, {2, 3, E}, {3, 4, E}, {4, 1, E}})));
    CHECK_FALSE(is_bipartite(make_k2eq()));
    CHECK_FALSE(is_bipartite(make_k4odd()));
    auto c = find_odd_cycle(make_k4odd());
    REQUIRE(c.has_value());
    CHECK(is_cycle(make_k4odd(), *c));
    CHECK(walk_parity(make_k4odd(), *c) == O);
}

TEST_CASE("sign equivalence") {
    SignedGraph k2 = make_k2eq();
    auto same = sign_equivalent(k2, k2);
    REQUIRE(same);
    CHECK(resign(k2, *same) == k2);
    SignedGraph both_odd = SignedGraph::build(2, {{1, 2, O}, {1, 2, O}});
    CHECK_FALSE(sign_equivalent(k2, both_odd).has_value());
    SignedGraph dp = make_double_prism();
    auto u = sign_equivalent(dp, resign(dp, {3}));
    REQUIRE(u);
    CHECK(resign(dp, *u) == resign(dp, {3}));
    CHECK_THROWS_AS(sign_equivalent(k2, triangle(E, E, E)), InputError);
}

TEST_CASE("contraction") {
    SignedGraph t = triangle(E, E, E);
    SignedGraph c = contract_edge(t, 0);
    CHECK(c.vertex_count() == 2);
    CHECK(c.edge_count() == 2);
    CHECK(is_bipartite(c));
    CHECK(c.has_vertex(1));

    SignedGraph k = contract_edge(make_k2eq(), 0);
    CHECK(k.vertex_count() == 1);
    CHECK(k.edge_count() == 0);

    SignedGraph odd_tri = triangle(O, E, E);
    SignedGraph d = contract_edge(odd_tri, 0);
    CHECK(d.edge_count() == 2);
    CHECK_FALSE(is_bipartite(d));
    CHECK_THROWS_AS(contract_edge(t, 9), InputError);
}

TEST_CASE("deletion") {
    SignedGraph k = delete_edge(make_k2eq(), 1);
    CHECK(is_bipartite(k));
    CHECK(k.edge_count() == 1);
    SignedGraph k3 = delete_vertex(make_k4odd(), 4);
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);
    CHECK_FALSE(is_bipartite(k3));
    SignedGraph bare = make_k4odd();
    for (EdgeId e = 0; e < 6; ++e) bare = delete_edge(bare, e);
    CHECK(bare.edge_count() == 0);
    CHECK(is_bipartite(bare));
    CHECK_THROWS_AS(delete_vertex(bare, 11), InputError);
}

TEST_CASE("connectivity") {
    SignedGraph two = SignedGraph::build(6, {{1, 2, E}, {2, 3, E}, {1, 3, E}, {4, 5, E}, {5, 6, E}, {4, 6, E}});
    CHECK(components(two).size() == 2);
    SignedGraph path = SignedGraph::build(3, {{1, 2, E}, {2, 3, O}});
    CHECK(blocks(path).size() == 2);
    CHECK(cut_vertices(path) == std::vector<VertexId>{2});
    SignedGraph dp = make_double_prism();
    CHECK(blocks(dp).size() == 1);
    CHECK(is_two_connected(dp));
    CHECK(oracle::two_connected(dp));
}

TEST_CASE("two-connectivity agrees with the vertex-deletion oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        int m = static_cast<int>(rng() % 9);
        SignedGraph g = oracle::random_graph(rng, n, m);
        CHECK(is_two_connected(g) == oracle::two_connected(g));
    }
}

TEST_CASE("signed isomorphism") {
    SignedGraph dp = make_double_prism();
    auto self = signed_isomorphic(dp, dp);
    REQUIRE(self);
    CHECK(is_signed_isomorphism(dp, dp, *self));

    SignedGraph doubled_even = SignedGraph::build(3, {{1, 2, E}, {1, 2, E}, {1, 3, E}, {1, 3, E}, {2, 3, E}, {2, 3, E}});
    CHECK_FALSE(signed_isomorphic(make_k3eq(), doubled_even).has_value());

    auto t = signed_isomorphic(triangle(O, E, E), triangle(O, O, O));
    REQUIRE(t);
    CHECK(is_signed_isomorphism(triangle(O, E, E), triangle(O, O, O), *t));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        SignedGraph a = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 8));
        SignedGraph b = oracle::random_graph(rng, static_cast<int>(a.vertex_count()), static_cast<int>(a.edge_count()));
        CHECK(signed_isomorphic(a, a).has_value());
        CHECK(signed_isomorphic(a, b).has_value() == signed_isomorphic(b, a).has_value());
        CHECK((canonical_key(a) == canonical_key(b)) == signed_isomorphic(a, b).has_value());
    }
}

TEST_CASE("canonical key is invariant under relabelling and re-signing") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        SignedGraph g = oracle::random_graph(rng, n, static_cast<int>(rng() % 10));
        std::vector<VertexId> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::tuple<VertexId, VertexId, Parity>> es;
        for (const Edge& e : g.edges()) es.emplace_back(perm[static_cast<std::size_t>(e.u - 1)], perm[static_cast<std::size_t>(e.v - 1)], e.parity);
        SignedGraph h = SignedGraph::build(n, es);
        VertexSet u;
        for (VertexId v : h.vertices())
            if (rng() % 2) u.insert(v);
        CHECK(canonical_key(g) == canonical_key(resign(h, u)));
    }
}

// Exhaustive cycle-level checks of re-signing and contraction.
TEST_CASE("cycle parities survive re-signing and contraction") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        SignedGraph g = oracle::random_graph(rng, n, static_cast<int>(rng() % 8));
        auto before = cycle_parities(g);
        VertexSet u;
        for (VertexId v : g.vertices())
            if (rng() % 2) u.insert(v);
        CHECK(cycle_parities(resign(g, u)) == before);
        CHECK(is_bipartite(g) == oracle::bipartite_by_cycles(g));
        CHECK(is_bipartite(g) == sign_equivalent(g, all_even(g)).has_value());

        for (const Edge& e : g.edges()) {
            SignedGraph c = contract_edge(g, e.id);
            auto after = cycle_parities(c);
            for (auto& [ids, par] : before) {
                std::vector<EdgeId> rest;
                for (EdgeId x : ids)
                    if (x != e.id) rest.push_back(x);
                bool uses_mate = false;
                for (EdgeId x : rest) uses_mate = uses_mate || g.edge(x).joins(e.u, e.v);
                if (rest.size() == ids.size()) {
                    // Cycle avoiding e: survives unless it runs through a parallel mate or both ends.
                    if (uses_mate) continue;
                    bool touches_both = false, touches_u = false, touches_v = false;
                    for (EdgeId x : rest) {
                        touches_u = touches_u || g.edge(x).incident(e.u);
                        touches_v = touches_v || g.edge(x).incident(e.v);
                    }
                    touches_both = touches_u && touches_v;
                    if (touches_both) continue;
                    REQUIRE(after.count(rest));
                    CHECK(after[rest] == par);
                } else if (rest.size() >= 2 && !uses_mate) {
                    REQUIRE(after.count(rest));
                    CHECK(after[rest] == par);
                }
            }
        }
    }
}

TEST_CASE("text and record formats round-trip") {
    SignedGraph dp = make_double_prism();
    SignedGraph back = parse_graph_text(format_graph_text(dp));
    CHECK(back == dp);
    CHECK(graph_from_json(graph_to_json(dp)) == dp);
    CHECK(parse_graph("{\"n\":2,\"edges\":[{\"u\":1,\"v\":2,\"odd\":true}]}", GraphFormat::records).edge(0).odd());
    CHECK_THROWS_AS(parse_graph_text("signed-graph v1 2\n1 1 +\n"), InputError);
    CHECK_THROWS_AS(parse_graph_text("signed-graph v1 2\n1 3 +\n"), InputError);
    CHECK_THROWS_AS(parse_graph_text("graph 2\n"), InputError);
    CHECK(to_dot(make_k2eq()).find("bold") != std::string::npos);
}
