#pragma once

#include "signu/classify.hpp"
#include "signu/signed_graph.hpp"
#include "signu/splits.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace signu {

enum class MinorTarget { k4odd, k3eq, k2eq };

/// "k4o", "k3eq", "k2eq".
std::string to_string(MinorTarget t);
std::optional<MinorTarget> minor_target_from_string(const std::string& s);
SignedGraph target_graph(MinorTarget t);

enum class MinorOpKind { contract_edge, delete_edge, delete_vertex };

struct MinorOp {
    MinorOpKind kind = MinorOpKind::delete_edge;
    /// Edge id for the edge operations, vertex id for delete_vertex.
    int id = 0;
    friend bool operator==(const MinorOp&, const MinorOp&) = default;
};

struct MinorWitness {
    MinorTarget target = MinorTarget::k2eq;
    std::vector<MinorOp> script;
    /// From the graph left by the script onto target_graph(target).
    SignedIsomorphism isomorphism;
};

/// Runs the script on g; nullopt when an operation refers to a missing edge or vertex.
std::optional<SignedGraph> run_minor_script(const SignedGraph& g, const std::vector<MinorOp>& script);

/// True iff the script applies cleanly and its result maps onto the target.
bool check_minor_witness(const SignedGraph& g, const MinorWitness& w);

/// Exhaustive search: contractions are explored depth-first with a canonical-form memo,
/// and each contracted graph is tested for the target as a signed subgraph. Throws
/// CapacityError above 20 edges.
std::optional<MinorWitness> brute_force_minor(const SignedGraph& g, MinorTarget target);

struct DecompositionNode {
    SignedGraph graph;
    Answer answer = Answer::nu_le_1;
    std::optional<SplitDescription> split;
    std::vector<DecompositionNode> children;
    std::optional<LeafClass> leaf;
    std::optional<MinorWitness> witness;
    /// At most two vertices or two edges: too small for any leaf class.
    bool base_case = false;
};

struct Verdict {
    Answer answer = Answer::nu_le_1;
    DecompositionNode root;
    /// Lower bound nu >= 2.
    std::optional<Walk> odd_cycle;
    /// Lower bound nu >= 3, on the input graph itself.
    std::optional<MinorWitness> minor;
    std::vector<std::string> notes;
};

/// Throws InputError on an empty graph, CapacityError when a leaf needs a search past
/// the desk-scale cap, and InternalError when a split-free leaf has no class and no bad minor.
Verdict decide_nu(const SignedGraph& g);

struct ValidationResult {
    bool ok = false;
    /// Slash-separated child indices of the first failing node, "" for the root.
    std::string node;
    std::string message;
};

ValidationResult validate_verdict(const SignedGraph& g, const Verdict& v);

/// Rows: the all-ones-then-odd-edges row, then one incidence row per vertex.
/// Columns: the extra unit column, then one column per edge in id order. Entries are 0/1.
std::vector<std::vector<std::uint8_t>> even_cycle_matroid_matrix(const SignedGraph& g);

nlohmann::json minor_witness_to_json(const MinorWitness& w);
MinorWitness minor_witness_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const SignedGraph& g, const Verdict& v);
/// Returns the input graph stored in the certificate along with the verdict.
std::pair<SignedGraph, Verdict> verdict_from_json(const nlohmann::json& j);

/// "nu <= 1", "nu = 2", or "nu >= 3 (K4o minor)" / "nu >= 3 (K3= minor)".
std::string verdict_summary(const Verdict& v);

} // namespace signu
