#include "oracles.hpp"

#include "signu/classify.hpp"
#include "signu/errors.hpp"

#include <doctest.h>

using namespace signu;

namespace {

const Parity E = Parity::even;
const Parity O = Parity::odd;

SignedGraph complete(int n, Parity p) {
    std::vector<std::tuple<VertexId, VertexId, Parity>> es;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) es.emplace_back(a, b, p);
    return SignedGraph::build(n, es);
}

} // namespace

TEST_CASE("embedding counts follow Euler") {
    auto tri = planar_embeddings(complete(3, E));
    CHECK(tri.size() == 1);
    for (const auto& e : tri) CHECK(e.face_count() == 2);
    auto k4 = planar_embeddings(complete(4, O));
    CHECK(k4.size() == 2);
    for (const auto& e : k4) {
        CHECK(e.face_count() == 4);
        CHECK(e.odd_faces == 4);
        CHECK(validate_embedding(complete(4, O), e));
    }
    CHECK(planar_embeddings(complete(5, E)).empty());
    CHECK_FALSE(is_planar(complete(5, E)));
    SignedGraph k33 = SignedGraph::build(6, {{1, 4, E}, {1, 5, E}, {1, 6, E}, {2, 4, E}, {2, 5, E}, {2, 6, E}, {3, 4, E}, {3, 5, E}, {3, 6, E}});
    CHECK_FALSE(is_planar(k33));

    std::vector<std::tuple<VertexId, VertexId, Parity>> many;
    for (int i = 0; i < 21; ++i) many.emplace_back(1, 2, E);
    CHECK_THROWS_AS(planar_embeddings(SignedGraph::build(2, many)), CapacityError);
}

TEST_CASE("incremental enumeration matches brute-force rotation systems") {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 250; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        int m = static_cast<int>(rng() % 8);
        SignedGraph g = oracle::random_graph(rng, n, n >= 2 ? m : 0);
        long work = 1;
        for (VertexId v : g.vertices())
            for (int k = 2; k < g.degree(v); ++k) work *= k;
        if (work > 20000) continue;
        ++checked;
        auto mine = planar_embeddings(g);
        auto ref = oracle::brute_force_embeddings(g);
        REQUIRE(mine.size() == ref.size());
        std::set<oracle::Rotation> a, b;
        std::multiset<int> odd_a, odd_b;
        for (const auto& e : mine) {
            a.insert(oracle::normalise(e.rotation));
            odd_a.insert(e.odd_faces);
            CHECK(validate_embedding(g, e));
            CHECK(e.odd_faces % 2 == 0);
            CHECK(static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count()) + e.face_count() ==
                  1 + static_cast<long>(components(g).size()));
        }
        for (const auto& [r, odd] : ref) {
            b.insert(oracle::normalise(r));
            odd_b.insert(odd);
        }
        CHECK(a.size() == mine.size());
        CHECK(a == b);
        CHECK(odd_a == odd_b);

        std::optional<int> best;
        for (int o : odd_b) best = best ? std::min(*best, o) : o;
        bool expect = best && *best <= 2 && components(g).size() <= 1;
        if (components(g).size() <= 1) CHECK(two_odd_faces(g).has_value() == expect);
    }
    CHECK(checked > 150);
}

TEST_CASE("tampered embeddings are rejected") {
    SignedGraph k4 = complete(4, O);
    PlaneEmbedding e = planar_embeddings(k4).front();
    PlaneEmbedding bad = e;
    bad.odd_faces = 2;
    CHECK_FALSE(validate_embedding(k4, bad));
    bad = e;
    std::swap(bad.rotation[1][0], bad.rotation[1][1]);
    CHECK_FALSE(validate_embedding(k4, bad));
    bad = e;
    bad.faces.pop_back();
    CHECK_FALSE(validate_embedding(k4, bad));
}

TEST_CASE("two odd faces") {
    auto k2 = two_odd_faces(make_k2eq());
    REQUIRE(k2);
    CHECK(k2->face_count() == 2);
    CHECK(k2->odd_faces == 2);
    auto ev = two_odd_faces(complete(4, E));
    REQUIRE(ev);
    CHECK(ev->odd_faces == 0);
    CHECK_FALSE(two_odd_faces(make_k3eq()).has_value());
    CHECK_FALSE(two_odd_faces(make_k4odd()).has_value());
    CHECK_FALSE(two_odd_faces(make_double_prism()).has_value());

    // A K2= and an even triangle side by side: odd faces are summed over components.
    SignedGraph pair = SignedGraph::build(5, {{1, 2, E}, {1, 2, O}, {3, 4, E}, {4, 5, E}, {3, 5, E}});
    auto p = two_odd_faces(pair);
    REQUIRE(p);
    CHECK(p->odd_faces == 2);
    CHECK(p->components == 2);
    CHECK(validate_embedding(pair, *p));
    SignedGraph twice = SignedGraph::build(4, {{1, 2, E}, {1, 2, O}, {3, 4, E}, {3, 4, O}});
    CHECK_FALSE(two_odd_faces(twice).has_value());
}

TEST_CASE("faces of a two-connected graph are cycles") {
    SignedGraph wheel = SignedGraph::build(5, {{1, 2, E}, {2, 3, O}, {3, 4, E}, {4, 1, E}, {5, 1, E}, {5, 2, E}, {5, 3, E}, {5, 4, E}});
    REQUIRE(oracle::two_connected(wheel));
    auto emb = two_odd_faces(wheel);
    REQUIRE(emb);
    for (const Walk& w : emb->faces) CHECK(is_cycle(wheel, w));
}

TEST_CASE("almost bipartite") {
    SignedGraph c4 = SignedGraph::build(4, {{1, 2, E}, {2, 3, E}, {3, 4, E}, {4, 1, E}});
    CHECK(is_almost_bipartite(c4) == 1);
    CHECK(is_almost_bipartite(make_k2eq()) == 1);
    CHECK_FALSE(is_almost_bipartite(make_double_prism()).has_value());
    for (VertexId v = 1; v <= 6; ++v) CHECK_FALSE(is_bipartite(delete_vertex(make_double_prism(), v)));
}

TEST_CASE("double prism recognition") {
    SignedGraph dp = make_double_prism();
    auto id = is_double_prism(dp);
    REQUIRE(id);
    for (auto [a, b] : id->bijection) CHECK(a == b);
    CHECK(id->resign_set.empty());
    CHECK_FALSE(is_double_prism(delete_edge(dp, 0)).has_value());
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        VertexSet u;
        for (VertexId v = 1; v <= 6; ++v)
            if (rng() % 2) u.insert(v);
        SignedGraph r = resign(dp, u);
        auto iso = is_double_prism(r);
        REQUIRE(iso);
        CHECK(is_signed_isomorphism(r, dp, *iso));
    }
}

TEST_CASE("small nu characterisations") {
    SignedGraph c4 = SignedGraph::build(4, {{1, 2, E}, {2, 3, O}, {3, 4, O}, {4, 1, E}});
    CHECK(nu_le_1(c4));
    CHECK(m_plus_le_1(c4));
    SignedGraph two = SignedGraph::build(8, {{1, 2, E}, {2, 3, E}, {3, 4, E}, {4, 1, E}, {5, 6, E}, {6, 7, E}, {7, 8, E}, {8, 5, E}});
    CHECK(nu_le_1(two));
    CHECK_FALSE(m_plus_le_1(two));
    CHECK_FALSE(nu_le_1(make_k2eq()));
    CHECK_FALSE(m_plus_le_1(make_k2eq()));
}

TEST_CASE("leaf classes of the canonical graphs") {
    CHECK(matching_classes(make_k4odd()).empty());
    CHECK(matching_classes(make_k3eq()).empty());
    CHECK(matching_classes(make_double_prism()) == std::vector<LeafTag>{LeafTag::double_prism});
    auto leaf = classify_leaf(make_double_prism());
    REQUIRE(leaf);
    CHECK(leaf->tag == LeafTag::double_prism);
    LeafClass back = leaf_from_json(leaf_to_json(*leaf));
    CHECK(back.tag == leaf->tag);
    CHECK(back.isomorphism->bijection == leaf->isomorphism->bijection);
    auto pl = classify_leaf(SignedGraph::build(3, {{1, 2, E}, {2, 3, E}, {1, 3, O}, {1, 3, E}}));
    REQUIRE(pl);
    CHECK(pl->tag == LeafTag::almost_bipartite);
    PlaneEmbedding e = *two_odd_faces(make_k2eq());
    CHECK(embedding_from_json(embedding_to_json(e)) == e);
}
