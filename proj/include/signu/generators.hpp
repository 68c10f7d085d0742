#pragma once

#include "signu/pattern_matrix.hpp"
#include "signu/signed_graph.hpp"

#include <Eigen/Dense>

#include <map>
#include <random>
#include <vector>

namespace signu {

/// Up to max_vertices vertices (at least one) and max_edges edges, uniform pairs and parities.
SignedGraph random_signed_graph(std::mt19937_64& rng, int max_vertices, int max_edges);

/// One representative per signed-isomorphism class of signed multigraphs with
/// 1..max_vertices vertices and 0..max_edges edges. Isolated vertices are kept.
std::vector<SignedGraph> exhaustive_corpus(int max_vertices, int max_edges);

struct PlaneBlock {
    SignedGraph graph;
    /// Facial walks of the generated embedding.
    std::vector<Walk> faces;
    /// The two faces joined by the dual path that defined the odd edges.
    std::size_t odd_a = 0;
    std::size_t odd_b = 0;
};

/// 2-connected plane graph grown from a cycle by ears drawn inside faces. The odd
/// edges are those crossed by a shortest dual path between two random faces, followed
/// by a random re-signing, so exactly those two faces are odd.
PlaneBlock random_plane_block(std::mt19937_64& rng, int max_edges);

/// G = G1 + G2 where G2 is connected and bipartite, C = V(G2) - V(G1) induces a
/// connected subgraph and every vertex of S = V(G1) & V(G2) has a neighbour in C.
struct CliqueSetup {
    SignedGraph g;
    /// G1 plus one edge per pair of S, with the parity of the G2 paths joining the pair.
    SignedGraph h;
    std::vector<VertexId> s;
    VertexSet c;
    /// 0/1 potential on V(G2): every G2 edge has parity potential(u) xor potential(v).
    std::map<VertexId, int> potential;
};

CliqueSetup random_clique_setup(std::mt19937_64& rng);

/// G - separator splits into 2 or 3 connected bipartite components. Each separator
/// vertex meets each component in two edges closing an odd cycle with the component,
/// which lets a component block be singular without coupling to the separator.
struct SeparatorSetup {
    SignedGraph g;
    std::vector<VertexId> separator;
    std::vector<VertexSet> components;
    std::map<VertexId, int> potential;
};

SeparatorSetup random_separator_setup(std::mt19937_64& rng);

/// PSD matrix in S(g) whose block on each component listed in `singular` has a
/// one-dimensional kernel, and is positive definite on the other components.
PatternMatrix planted_separator_matrix(const SeparatorSetup& setup, const std::vector<bool>& singular, std::mt19937_64& rng);

/// 2-connected non-bipartite graph with a vertex meeting every odd cycle.
SignedGraph random_almost_bipartite_block(std::mt19937_64& rng, int max_base_vertices);

} // namespace signu
