#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace signu {

using VertexId = int;
using EdgeId = int;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator^(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
inline Parity flip(Parity p) { return p == Parity::odd ? Parity::even : Parity::odd; }
inline bool is_odd(Parity p) { return p == Parity::odd; }

struct Edge {
    EdgeId id = 0;
    VertexId u = 0;
    VertexId v = 0;
    Parity parity = Parity::even;

    bool odd() const { return parity == Parity::odd; }
    bool incident(VertexId x) const { return u == x || v == x; }
    VertexId other(VertexId x) const { return x == u ? v : u; }
    bool joins(VertexId a, VertexId b) const { return (u == a && v == b) || (u == b && v == a); }

    friend bool operator==(const Edge&, const Edge&) = default;
};

using VertexSet = std::set<VertexId>;

/// Alternating vertex/edge sequence: vertices.size() == edges.size() + 1.
/// Closed when the first and last vertex coincide.
struct Walk {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    bool closed() const { return !vertices.empty() && vertices.front() == vertices.back(); }
    friend bool operator==(const Walk&, const Walk&) = default;
};

/// Loopless multigraph with a parity on every edge. Immutable value type:
/// every operation in this library returns a new graph.
///
/// Vertices are kept sorted; edges are kept sorted by id. Edge ids are stable
/// across operations so traces and certificates can refer to them.
class SignedGraph {
public:
    SignedGraph() = default;

    /// Throws InputError on loops, duplicate ids, or dangling endpoints.
    SignedGraph(std::vector<VertexId> vertices, std::vector<Edge> edges);

    /// Vertices 1..n; edges given as (u, v, parity) receive ids 0, 1, 2, ...
    static SignedGraph build(int n, const std::vector<std::tuple<VertexId, VertexId, Parity>>& edges);

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(VertexId v) const;
    bool has_edge(EdgeId e) const;
    /// Throws InputError when the id is unknown.
    const Edge& edge(EdgeId e) const;
    std::size_t vertex_index(VertexId v) const;

    int degree(VertexId v) const;
    std::vector<EdgeId> incident_edges(VertexId v) const;
    std::vector<EdgeId> edges_between(VertexId a, VertexId b) const;
    /// Distinct neighbours, sorted.
    std::vector<VertexId> neighbours(VertexId v) const;
    VertexSet odd_edge_ids() const;

    EdgeId next_edge_id() const { return edges_.empty() ? 0 : edges_.back().id + 1; }
    VertexId next_vertex_id() const { return vertices_.empty() ? 1 : vertices_.back() + 1; }

    SignedGraph with_vertex(VertexId v) const;
    SignedGraph with_edge(VertexId u, VertexId v, Parity p) const;
    SignedGraph with_edge(Edge e) const;
    SignedGraph with_parities(const std::vector<Parity>& parity_by_position) const;

    friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
};

// --- re-signing and parity ---------------------------------------------------

/// Flips the parity of every edge with exactly one end in u.
SignedGraph resign(const SignedGraph& g, const VertexSet& u);

/// Parity of the number of odd edges traversed (with multiplicity).
/// Throws InputError when the walk does not follow incidences of g.
Parity walk_parity(const SignedGraph& g, const Walk& w);

bool is_valid_walk(const SignedGraph& g, const Walk& w);
/// Closed walk without repeated vertices (except the endpoints) and without repeated edges.
bool is_cycle(const SignedGraph& g, const Walk& w);

bool is_bipartite(const SignedGraph& g);

/// Some odd cycle of g, or nullopt when g is bipartite.
std::optional<Walk> find_odd_cycle(const SignedGraph& g);

/// Re-signing set U with Sigma2 = Sigma1 xor delta(U), or nullopt.
/// Throws InputError when the underlying labelled multigraphs differ.
std::optional<VertexSet> sign_equivalent(const SignedGraph& g1, const SignedGraph& g2);

/// All-even copy of g.
SignedGraph all_even(const SignedGraph& g);

// --- minor operations ----------------------------------------------------------

/// Contracts e = uv: re-signs on {u} first if e is odd, then merges v into u.
/// Edges parallel to e would become loops and are deleted.
SignedGraph contract_edge(const SignedGraph& g, EdgeId e);
SignedGraph delete_edge(const SignedGraph& g, EdgeId e);
SignedGraph delete_vertex(const SignedGraph& g, VertexId v);
SignedGraph delete_vertices(const SignedGraph& g, const VertexSet& vs);
SignedGraph induced_subgraph(const SignedGraph& g, const VertexSet& vs);
/// Subgraph on the given edges; vertex set = ends of those edges.
SignedGraph edge_subgraph(const SignedGraph& g, const std::vector<EdgeId>& edge_ids);
SignedGraph drop_isolated_vertices(const SignedGraph& g);

// --- connectivity ----------------------------------------------------------------

std::vector<VertexSet> components(const SignedGraph& g);
bool is_connected(const SignedGraph& g);
/// Edge sets of the 2-connected components (blocks); isolated vertices carry no block.
std::vector<std::vector<EdgeId>> block_edge_sets(const SignedGraph& g);
std::vector<SignedGraph> blocks(const SignedGraph& g);
std::vector<VertexId> cut_vertices(const SignedGraph& g);
/// At least three vertices, connected, no cut vertex.
bool is_two_connected(const SignedGraph& g);
/// Every two edges lie on a common cycle (single edges and edgeless single vertices count).
bool is_block(const SignedGraph& g);

// --- isomorphism -----------------------------------------------------------------

struct SignedIsomorphism {
    /// Maps each vertex of g1 to a vertex of g2.
    std::vector<std::pair<VertexId, VertexId>> bijection;
    /// Re-signing set on g2's vertices.
    VertexSet resign_set;
};

/// Brute force over vertex bijections (intended for <= 8 vertices). A match means
/// pi maps g1 onto resign(g2, U) with equal per-pair parity multiplicities.
std::optional<SignedIsomorphism> signed_isomorphic(const SignedGraph& g1, const SignedGraph& g2);

/// Checks a proposed (pi, U) directly.
bool is_signed_isomorphism(const SignedGraph& g1, const SignedGraph& g2, const SignedIsomorphism& iso);

/// Canonical form up to vertex relabelling and re-signing (edge ids ignored).
/// Two graphs share a key iff they are signed-isomorphic.
std::string canonical_key(const SignedGraph& g);

// --- canonical instances ---------------------------------------------------------

SignedGraph make_k2eq();
SignedGraph make_k3eq();
SignedGraph make_k4odd();
SignedGraph make_double_prism();

std::string to_string(Parity p);
std::string describe(const SignedGraph& g);

} // namespace signu
