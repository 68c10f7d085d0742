#include "signu/classify.hpp"

#include "signu/errors.hpp"
#include "signu/graph_io.hpp"

namespace signu {

using nlohmann::json;

std::optional<VertexId> is_almost_bipartite(const SignedGraph& g) {
    for (VertexId v : g.vertices())
        if (is_bipartite(delete_vertex(g, v))) return v;
    return std::nullopt;
}

std::optional<SignedIsomorphism> is_double_prism(const SignedGraph& g) {
    if (g.vertex_count() != 6 || g.edge_count() != 12) return std::nullopt;
    return signed_isomorphic(g, make_double_prism());
}

bool nu_le_1(const SignedGraph& g) { return is_bipartite(g); }

bool m_plus_le_1(const SignedGraph& g) { return is_connected(g) && is_bipartite(g); }

std::string to_string(LeafTag t) {
    switch (t) {
    case LeafTag::bipartite:
        return "bipartite";
    case LeafTag::almost_bipartite:
        return "almost_bipartite";
    case LeafTag::planar_two_odd_faces:
        return "planar_two_odd_faces";
    case LeafTag::double_prism:
        return "double_prism";
    }
    return "?";
}

std::optional<LeafTag> leaf_tag_from_string(const std::string& s) {
    for (LeafTag t : {LeafTag::bipartite, LeafTag::almost_bipartite, LeafTag::planar_two_odd_faces, LeafTag::double_prism})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::optional<LeafClass> classify_leaf(const SignedGraph& g) {
    LeafClass leaf;
    if (is_bipartite(g)) {
        leaf.tag = LeafTag::bipartite;
        return leaf;
    }
    if (auto v = is_almost_bipartite(g)) {
        leaf.tag = LeafTag::almost_bipartite;
        leaf.hit_vertex = v;
        return leaf;
    }
    if (g.edge_count() <= kDeskEdgeCap) {
        if (auto emb = two_odd_faces(g)) {
            leaf.tag = LeafTag::planar_two_odd_faces;
            leaf.embedding = std::move(emb);
            return leaf;
        }
    }
    if (auto iso = is_double_prism(g)) {
        leaf.tag = LeafTag::double_prism;
        leaf.isomorphism = std::move(iso);
        return leaf;
    }
    return std::nullopt;
}

std::vector<LeafTag> matching_classes(const SignedGraph& g) {
    std::vector<LeafTag> out;
    if (is_bipartite(g)) out.push_back(LeafTag::bipartite);
    if (is_almost_bipartite(g)) out.push_back(LeafTag::almost_bipartite);
    if (g.edge_count() <= kDeskEdgeCap && two_odd_faces(g)) out.push_back(LeafTag::planar_two_odd_faces);
    if (is_double_prism(g)) out.push_back(LeafTag::double_prism);
    return out;
}

json embedding_to_json(const PlaneEmbedding& emb) {
    json rot = json::array();
    for (const auto& [v, r] : emb.rotation) rot.push_back({{"vertex", v}, {"edges", r}});
    json faces = json::array();
    for (const Walk& w : emb.faces) faces.push_back(walk_to_json(w));
    return {{"rotation", rot}, {"faces", faces}, {"odd_faces", emb.odd_faces}, {"components", emb.components}};
}

PlaneEmbedding embedding_from_json(const json& j) {
    PlaneEmbedding emb;
    for (const auto& r : j.at("rotation")) emb.rotation[r.at("vertex").get<VertexId>()] = r.at("edges").get<std::vector<EdgeId>>();
    for (const auto& f : j.at("faces")) emb.faces.push_back(walk_from_json(f));
    emb.odd_faces = j.at("odd_faces").get<int>();
    emb.components = j.at("components").get<int>();
    return emb;
}

json isomorphism_to_json(const SignedIsomorphism& iso) {
    json pairs = json::array();
    for (auto [a, b] : iso.bijection) pairs.push_back({a, b});
    return {{"bijection", pairs}, {"resign", vertex_set_to_json(iso.resign_set)}};
}

SignedIsomorphism isomorphism_from_json(const json& j) {
    SignedIsomorphism iso;
    for (const auto& p : j.at("bijection")) iso.bijection.emplace_back(p.at(0).get<VertexId>(), p.at(1).get<VertexId>());
    iso.resign_set = vertex_set_from_json(j.at("resign"));
    return iso;
}

json leaf_to_json(const LeafClass& leaf) {
    json j = {{"class", to_string(leaf.tag)}};
    if (leaf.hit_vertex) j["hit_vertex"] = *leaf.hit_vertex;
    if (leaf.embedding) j["embedding"] = embedding_to_json(*leaf.embedding);
    if (leaf.isomorphism) j["isomorphism"] = isomorphism_to_json(*leaf.isomorphism);
    return j;
}

LeafClass leaf_from_json(const json& j) {
    LeafClass leaf;
    auto tag = leaf_tag_from_string(j.at("class").get<std::string>());
    if (!tag) throw InputError("unknown leaf class " + j.at("class").dump());
    leaf.tag = *tag;
    if (j.contains("hit_vertex")) leaf.hit_vertex = j.at("hit_vertex").get<VertexId>();
    if (j.contains("embedding")) leaf.embedding = embedding_from_json(j.at("embedding"));
    if (j.contains("isomorphism")) leaf.isomorphism = isomorphism_from_json(j.at("isomorphism"));
    return leaf;
}

} // namespace signu
