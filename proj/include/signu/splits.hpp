#pragma once

#include "signu/signed_graph.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace signu {

/// The certified trichotomy for nu.
enum class Answer { nu_le_1 = 1, nu_eq_2 = 2, nu_ge_3 = 3 };

std::string to_string(Answer a);
std::optional<Answer> answer_from_string(const std::string& s);

/// One part of a split. Edges copied from the host keep their ids; replacement edges
/// get fresh ids starting at the host's next_edge_id().
struct SplitPart {
    SignedGraph graph;
    std::vector<EdgeId> synthetic;
    /// The new vertex w of a 3-split part.
    std::optional<VertexId> new_vertex;
};

struct SplitDescription {
    int kind = 0;
    std::vector<EdgeId> e1;
    std::vector<EdgeId> e2;
    std::vector<VertexId> separator;
    bool strong = false;
    std::vector<SplitPart> parts;
    /// How the replacement edges were chosen, for certificates.
    std::string note;
};

/// Edge groups of g that stay together in every split with separator s: the edges
/// touching each component of g - s, and each edge with both ends in s on its own.
/// Groups are ordered by their smallest edge id.
std::vector<std::vector<EdgeId>> separator_bridges(const SignedGraph& g, const VertexSet& s);

/// Side fails the "not a signed subgraph of K2=" test.
bool is_k2eq_subgraph(const SignedGraph& side);

/// Parity of every u-v path in a connected bipartite signed graph.
Parity path_parity(const SignedGraph& bipartite_side, VertexId u, VertexId v);

/// 0-split when g has two components with edges, otherwise a 1-split at the
/// smallest cut vertex. Isolated vertices are ignored.
std::optional<SplitDescription> find_01_split(const SignedGraph& g);
std::optional<SplitDescription> find_2_split(const SignedGraph& g);
std::optional<SplitDescription> find_3_split(const SignedGraph& g);

/// Tries kinds 0/1, 2, 3 in that order.
std::optional<SplitDescription> find_split(const SignedGraph& g);

/// Builds the two parts of a 2-split from its sides.
std::vector<SplitPart> two_split_parts(const SignedGraph& g, const std::vector<EdgeId>& e1, const std::vector<EdgeId>& e2,
                                       VertexId u, VertexId v);

/// Builds the part of a 3-split with bipartite side e2 and separator u1 < u2 < u3.
SplitPart three_split_part(const SignedGraph& g, const std::vector<EdgeId>& e1, const std::vector<EdgeId>& e2,
                           const std::vector<VertexId>& separator);

/// nu of the host from nu of the parts: the maximum for kinds 0-2, the single part's
/// value for kind 3.
Answer split_nu_recurrence(int kind, const std::vector<Answer>& parts);

nlohmann::json split_to_json(const SplitDescription& s);
SplitDescription split_from_json(const nlohmann::json& j);

} // namespace signu
