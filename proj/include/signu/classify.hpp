#pragma once

#include "signu/signed_graph.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace signu {

/// Largest edge count accepted by the embedding enumerator and the minor search.
inline constexpr std::size_t kDeskEdgeCap = 20;

/// A plane embedding given by a rotation system.
///
/// For a disconnected graph each component is embedded on its own sphere and the
/// spheres are glued through one face each; `faces` lists the sphere faces of every
/// component, and face_count() subtracts the identifications.
struct PlaneEmbedding {
    /// Cyclic order of the edges around each vertex.
    std::map<VertexId, std::vector<EdgeId>> rotation;
    /// Boundary walk of every face.
    std::vector<Walk> faces;
    int odd_faces = 0;
    int components = 1;

    int face_count() const { return static_cast<int>(faces.size()) - components + 1; }
    friend bool operator==(const PlaneEmbedding&, const PlaneEmbedding&) = default;
};

/// Traces the faces of a rotation system (successor-of-reverse rule). The rotation must
/// list every edge end of g exactly once.
std::vector<Walk> trace_faces(const SignedGraph& g, const std::map<VertexId, std::vector<EdgeId>>& rotation);

/// Calls `visit` on every plane embedding of g until it returns false. Embeddings with
/// more than `max_odd_faces` odd faces are skipped (and pruned early: adding an edge never
/// lowers the odd-face count). Throws CapacityError above kDeskEdgeCap edges.
void for_each_planar_embedding(const SignedGraph& g, const std::function<bool(const PlaneEmbedding&)>& visit,
                               int max_odd_faces = -1);

/// All plane embeddings, in enumeration order.
std::vector<PlaneEmbedding> planar_embeddings(const SignedGraph& g);

bool is_planar(const SignedGraph& g);

/// Checks rotation, faces, Euler's formula per component and the odd-face count.
bool validate_embedding(const SignedGraph& g, const PlaneEmbedding& emb);

/// An embedding with at most two odd faces, or nullopt.
std::optional<PlaneEmbedding> two_odd_faces(const SignedGraph& g);

/// Smallest vertex meeting every odd cycle.
std::optional<VertexId> is_almost_bipartite(const SignedGraph& g);

/// Isomorphism from g onto the canonical double prism.
std::optional<SignedIsomorphism> is_double_prism(const SignedGraph& g);

bool nu_le_1(const SignedGraph& g);
bool m_plus_le_1(const SignedGraph& g);

enum class LeafTag { bipartite, almost_bipartite, planar_two_odd_faces, double_prism };

std::string to_string(LeafTag t);
std::optional<LeafTag> leaf_tag_from_string(const std::string& s);

struct LeafClass {
    LeafTag tag = LeafTag::bipartite;
    std::optional<VertexId> hit_vertex;
    std::optional<PlaneEmbedding> embedding;
    std::optional<SignedIsomorphism> isomorphism;
};

/// First matching class in the order bipartite, almost bipartite, two odd faces,
/// double prism.
std::optional<LeafClass> classify_leaf(const SignedGraph& g);

/// Every class g belongs to.
std::vector<LeafTag> matching_classes(const SignedGraph& g);

nlohmann::json embedding_to_json(const PlaneEmbedding& emb);
PlaneEmbedding embedding_from_json(const nlohmann::json& j);
nlohmann::json isomorphism_to_json(const SignedIsomorphism& iso);
SignedIsomorphism isomorphism_from_json(const nlohmann::json& j);
nlohmann::json leaf_to_json(const LeafClass& leaf);
LeafClass leaf_from_json(const nlohmann::json& j);

} // namespace signu
