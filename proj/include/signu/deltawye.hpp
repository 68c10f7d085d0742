#pragma once

#include "signu/signed_graph.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace signu {

enum class MoveKind { series, parallel, parallel_series, delta_p2, y_delta, delta_y, degree_one };

std::string to_string(MoveKind k);
std::optional<MoveKind> move_kind_from_string(const std::string& s);

/// What a move does to nu when read from the input graph to the output graph.
enum class NuEffect { preserves, does_not_decrease };

std::string to_string(NuEffect e);
NuEffect expected_effect(MoveKind k);

/// True for the moves that remove edges; exchanges keep the edge count.
bool is_reduction(MoveKind k);

struct Move {
    MoveKind kind = MoveKind::series;
    /// series, parallel_series, y_delta, degree_one: the vertex acted on.
    std::optional<VertexId> vertex;
    /// parallel: {kept, deleted}; delta_y, delta_p2: the triangle's edge ids.
    std::vector<EdgeId> edges;

    // Filled in when the move is applied.
    std::vector<Edge> created;
    std::vector<EdgeId> deleted;
    std::optional<VertexId> new_vertex;
    NuEffect effect = NuEffect::preserves;

    friend bool operator==(const Move&, const Move&) = default;
};

struct ReductionTrace {
    SignedGraph initial;
    std::vector<Move> moves;
    SignedGraph final_graph;
};

// Individual moves. Each throws MoveError when its precondition fails.

/// Degree-2 vertex with two distinct neighbours; the new edge has the XOR parity.
SignedGraph series_reduce(const SignedGraph& g, VertexId v);
/// Equal-parity parallel pair; keeps the smaller id.
SignedGraph parallel_reduce(const SignedGraph& g, EdgeId e, EdgeId f);
/// v ends an odd/even parallel pair and has exactly one further edge, which is contracted.
SignedGraph parallel_series_reduce(const SignedGraph& g, VertexId v);
/// Degree-3 vertex with three distinct neighbours.
SignedGraph y_delta(const SignedGraph& g, VertexId v);
/// Even triangle (0 or 2 odd edges).
SignedGraph delta_y(const SignedGraph& g, const std::vector<EdgeId>& triangle);
/// Triangle with exactly one vertex of degree 2; deletes the edge opposite that vertex.
SignedGraph delta_p2(const SignedGraph& g, const std::vector<EdgeId>& triangle);
SignedGraph degree_one_reduce(const SignedGraph& g, VertexId v);

/// Applies the move named by kind/vertex/edges and records what it created and deleted.
SignedGraph apply_move(const SignedGraph& g, Move& move);

/// Every applicable move of the given kind, in anchor order (not yet applied).
std::vector<Move> candidate_moves(const SignedGraph& g, MoveKind kind);

struct EngineOptions {
    /// Kinds tried at every state, most preferred first. Kinds not listed are never used.
    std::vector<MoveKind> order{MoveKind::parallel, MoveKind::series,  MoveKind::parallel_series,
                                MoveKind::delta_p2, MoveKind::y_delta, MoveKind::delta_y};
    /// Optional cap on how many moves of a kind one trace may use.
    std::map<MoveKind, int> kind_limit;
    /// Every intermediate graph must embed with exactly two odd faces.
    bool require_two_odd_faces = true;
    bool require_block = true;
    std::size_t max_states = 200000;
};

/// Depth-first search for a move sequence ending at a graph signed-isomorphic to K2=.
/// Throws InputError when the precondition fails (a non-bipartite block with an
/// embedding having two odd faces, unless relaxed by the options), CapacityError past
/// max_states or 20 edges, and InternalError when the search is exhausted.
ReductionTrace reduce_to_k2eq(const SignedGraph& g, const EngineOptions& options = {});

struct ReplayResult {
    bool ok = false;
    /// Index of the first move that failed, or moves.size() when only the final graph differs.
    std::size_t failing_index = 0;
    std::string message;
};

ReplayResult replay(const ReductionTrace& trace);

nlohmann::json move_to_json(const Move& m);
Move move_from_json(const nlohmann::json& j);
nlohmann::json trace_to_json(const ReductionTrace& t);
ReductionTrace trace_from_json(const nlohmann::json& j);

} // namespace signu
