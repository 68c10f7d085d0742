#include "signu/pipeline.hpp"

#include "signu/errors.hpp"
#include "signu/graph_io.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace signu {

using nlohmann::json;

std::string to_string(MinorTarget t) {
    switch (t) {
    case MinorTarget::k4odd:
        return "k4o";
    case MinorTarget::k3eq:
        return "k3eq";
    case MinorTarget::k2eq:
        return "k2eq";
    }
    return "?";
}

std::optional<MinorTarget> minor_target_from_string(const std::string& s) {
    for (MinorTarget t : {MinorTarget::k4odd, MinorTarget::k3eq, MinorTarget::k2eq})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

SignedGraph target_graph(MinorTarget t) {
    switch (t) {
    case MinorTarget::k4odd:
        return make_k4odd();
    case MinorTarget::k3eq:
        return make_k3eq();
    case MinorTarget::k2eq:
        return make_k2eq();
    }
    throw InputError("unknown minor target");
}

std::optional<SignedGraph> run_minor_script(const SignedGraph& g, const std::vector<MinorOp>& script) {
    SignedGraph cur = g;
    for (const MinorOp& op : script) {
        switch (op.kind) {
        case MinorOpKind::contract_edge:
            if (!cur.has_edge(op.id)) return std::nullopt;
            cur = contract_edge(cur, op.id);
            break;
        case MinorOpKind::delete_edge:
            if (!cur.has_edge(op.id)) return std::nullopt;
            cur = delete_edge(cur, op.id);
            break;
        case MinorOpKind::delete_vertex:
            if (!cur.has_vertex(op.id)) return std::nullopt;
            cur = delete_vertex(cur, op.id);
            break;
        }
    }
    return cur;
}

bool check_minor_witness(const SignedGraph& g, const MinorWitness& w) {
    auto result = run_minor_script(g, w.script);
    return result && is_signed_isomorphism(*result, target_graph(w.target), w.isomorphism);
}

namespace {

struct Embedding {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
};

// Edge of the given parity between a and b, if any.
std::optional<EdgeId> edge_with(const SignedGraph& g, VertexId a, VertexId b, Parity p) {
    for (EdgeId id : g.edges_between(a, b))
        if (g.edge(id).parity == p) return id;
    return std::nullopt;
}

std::optional<Embedding> find_doubled_clique(const SignedGraph& g, std::size_t k) {
    std::vector<VertexId> pick;
    std::optional<Embedding> found;
    const auto& vs = g.vertices();
    auto grow = [&](auto&& self, std::size_t from) -> bool {
        if (pick.size() == k) {
            Embedding emb{pick, {}};
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) {
                    emb.edges.push_back(*edge_with(g, pick[i], pick[j], Parity::even));
                    emb.edges.push_back(*edge_with(g, pick[i], pick[j], Parity::odd));
                }
            found = emb;
            return true;
        }
        for (std::size_t i = from; i < vs.size(); ++i) {
            bool ok = true;
            for (VertexId p : pick) ok = ok && edge_with(g, p, vs[i], Parity::even) && edge_with(g, p, vs[i], Parity::odd);
            if (!ok) continue;
            pick.push_back(vs[i]);
            if (self(self, i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    grow(grow, 0);
    return found;
}

// K4 whose four triangles are all odd, choosing one edge per pair.
std::optional<Embedding> find_odd_k4(const SignedGraph& g) {
    const auto& vs = g.vertices();
    const std::size_t n = vs.size();
    const std::array<std::array<int, 3>, 4> tri{{{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}}};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) {
                    const std::array<VertexId, 4> q{vs[a], vs[b], vs[c], vs[d]};
                    // Pair order 01 02 12 03 13 23; `tri` lists the pair slots of each triangle.
                    const std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}};
                    std::array<std::vector<EdgeId>, 6> options;
                    bool complete = true;
                    for (std::size_t p = 0; p < 6; ++p) {
                        for (Parity par : {Parity::even, Parity::odd})
                            if (auto id = edge_with(g, q[pairs[p].first], q[pairs[p].second], par)) options[p].push_back(*id);
                        complete = complete && !options[p].empty();
                    }
                    if (!complete) continue;
                    for (unsigned mask = 0; mask < 64; ++mask) {
                        std::array<EdgeId, 6> chosen{};
                        bool fits = true;
                        for (std::size_t p = 0; p < 6 && fits; ++p) {
                            const unsigned bit = (mask >> p) & 1U;
                            if (bit >= options[p].size()) fits = false;
                            else chosen[p] = options[p][bit];
                        }
                        if (!fits) continue;
                        bool all_odd = true;
                        for (const auto& t : tri) {
                            int odd = 0;
                            for (int slot : t) odd += g.edge(chosen[static_cast<std::size_t>(slot)]).odd() ? 1 : 0;
                            all_odd = all_odd && odd % 2 == 1;
                        }
                        if (all_odd) return Embedding{{q.begin(), q.end()}, {chosen.begin(), chosen.end()}};
                    }
                }
    return std::nullopt;
}

std::optional<Embedding> find_target_subgraph(const SignedGraph& g, MinorTarget t) {
    switch (t) {
    case MinorTarget::k4odd:
        return find_odd_k4(g);
    case MinorTarget::k3eq:
        return find_doubled_clique(g, 3);
    case MinorTarget::k2eq:
        return find_doubled_clique(g, 2);
    }
    return std::nullopt;
}

class MinorSearch {
public:
    MinorSearch(const SignedGraph& g, MinorTarget t) : host_(g), target_(t), shape_(target_graph(t)) {}

    std::optional<MinorWitness> run() {
        std::vector<EdgeId> contracted;
        visited_.insert(canonical_key(host_));
        return dfs(host_, contracted);
    }

private:
    std::optional<MinorWitness> dfs(const SignedGraph& g, std::vector<EdgeId>& contracted) {
        if (g.vertex_count() < shape_.vertex_count() || g.edge_count() < shape_.edge_count()) return std::nullopt;
        if (is_bipartite(g)) return std::nullopt;
        if (auto emb = find_target_subgraph(g, target_)) return witness(g, contracted, *emb);
        for (const Edge& e : g.edges()) {
            SignedGraph next = contract_edge(g, e.id);
            if (!visited_.insert(canonical_key(next)).second) continue;
            contracted.push_back(e.id);
            if (auto w = dfs(next, contracted)) return w;
            contracted.pop_back();
        }
        return std::nullopt;
    }

    MinorWitness witness(const SignedGraph& g, const std::vector<EdgeId>& contracted, const Embedding& emb) {
        MinorWitness w;
        w.target = target_;
        for (EdgeId id : contracted) w.script.push_back({MinorOpKind::contract_edge, id});
        for (const Edge& e : g.edges())
            if (std::find(emb.edges.begin(), emb.edges.end(), e.id) == emb.edges.end())
                w.script.push_back({MinorOpKind::delete_edge, static_cast<int>(e.id)});
        for (VertexId v : g.vertices())
            if (std::find(emb.vertices.begin(), emb.vertices.end(), v) == emb.vertices.end())
                w.script.push_back({MinorOpKind::delete_vertex, static_cast<int>(v)});
        auto result = run_minor_script(host_, w.script);
        if (!result) throw InternalError("minor script does not replay");
        auto iso = signed_isomorphic(*result, shape_);
        if (!iso) throw InternalError("minor script does not produce " + to_string(target_));
        w.isomorphism = *iso;
        if (!check_minor_witness(host_, w)) throw InternalError("minor witness fails its own check");
        return w;
    }

    const SignedGraph& host_;
    MinorTarget target_;
    SignedGraph shape_;
    std::unordered_set<std::string> visited_;
};

bool small_base_case(const SignedGraph& g) { return g.vertex_count() <= 2 || g.edge_count() <= 2; }

std::optional<MinorWitness> bad_minor(const SignedGraph& g) {
    if (auto w = brute_force_minor(g, MinorTarget::k4odd)) return w;
    return brute_force_minor(g, MinorTarget::k3eq);
}

DecompositionNode solve(const SignedGraph& g) {
    DecompositionNode node;
    node.graph = g;
    node.base_case = small_base_case(g);
    if (is_bipartite(g)) {
        node.leaf = LeafClass{LeafTag::bipartite, std::nullopt, std::nullopt, std::nullopt};
        node.answer = Answer::nu_le_1;
        return node;
    }
    if (!node.base_case) {
        if (auto split = find_split(g)) {
            std::vector<Answer> answers;
            for (const SplitPart& p : split->parts) {
                node.children.push_back(solve(p.graph));
                answers.push_back(node.children.back().answer);
            }
            node.answer = split_nu_recurrence(split->kind, answers);
            node.split = std::move(split);
            return node;
        }
    }
    if (auto leaf = classify_leaf(g)) {
        node.leaf = std::move(leaf);
        node.answer = Answer::nu_eq_2;
        return node;
    }
    if (auto w = bad_minor(g)) {
        node.witness = std::move(w);
        node.answer = Answer::nu_ge_3;
        return node;
    }
    throw InternalError("split-free leaf with no class and no K4o or K3= minor: " + describe(g));
}

} // namespace

std::optional<MinorWitness> brute_force_minor(const SignedGraph& g, MinorTarget target) {
    if (g.edge_count() > kDeskEdgeCap) {
        throw CapacityError("minor search is limited to " + std::to_string(kDeskEdgeCap) + " edges, got " +
                            std::to_string(g.edge_count()));
    }
    return MinorSearch(g, target).run();
}

Verdict decide_nu(const SignedGraph& g) {
    if (g.empty()) throw InputError("decide_nu needs at least one vertex");
    Verdict v;
    if (is_bipartite(g)) {
        v.root = solve(g);
        v.answer = v.root.answer;
        return v;
    }
    SignedGraph core = drop_isolated_vertices(g);
    if (core.vertex_count() != g.vertex_count()) {
        v.notes.push_back("isolated vertices removed before splitting: " + std::to_string(g.vertex_count() - core.vertex_count()));
    }
    v.root = solve(core);
    v.answer = v.root.answer;
    v.odd_cycle = find_odd_cycle(g);
    if (v.answer == Answer::nu_ge_3) {
        v.notes.push_back("bad-minor search order: k4o, then k3eq");
        v.minor = bad_minor(g);
        if (!v.minor) throw InternalError("a part has a bad minor but the input has none: " + describe(g));
    }
    return v;
}

std::vector<std::vector<std::uint8_t>> even_cycle_matroid_matrix(const SignedGraph& g) {
    const std::size_t rows = 1 + g.vertex_count(), cols = 1 + g.edge_count();
    std::vector<std::vector<std::uint8_t>> m(rows, std::vector<std::uint8_t>(cols, 0));
    m[0][0] = 1;
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        const Edge& e = g.edges()[k];
        m[0][k + 1] = e.odd() ? 1 : 0;
        m[1 + g.vertex_index(e.u)][k + 1] ^= 1;
        m[1 + g.vertex_index(e.v)][k + 1] ^= 1;
    }
    return m;
}

std::string verdict_summary(const Verdict& v) {
    switch (v.answer) {
    case Answer::nu_le_1:
        return "nu <= 1";
    case Answer::nu_eq_2:
        return "nu = 2";
    case Answer::nu_ge_3:
        if (v.minor) return std::string("nu >= 3 (") + (v.minor->target == MinorTarget::k4odd ? "K4o" : "K3=") + " minor)";
        return "nu >= 3";
    }
    return "?";
}

namespace {

std::string op_name(MinorOpKind k) {
    switch (k) {
    case MinorOpKind::contract_edge:
        return "contract_edge";
    case MinorOpKind::delete_edge:
        return "delete_edge";
    case MinorOpKind::delete_vertex:
        return "delete_vertex";
    }
    return "?";
}

json node_to_json(const DecompositionNode& n) {
    json j = {{"graph", graph_to_json(n.graph)}, {"answer", to_string(n.answer)}};
    if (n.base_case) j["base_case"] = true;
    if (n.split) j["split"] = split_to_json(*n.split);
    if (!n.children.empty()) {
        json kids = json::array();
        for (const auto& c : n.children) kids.push_back(node_to_json(c));
        j["children"] = kids;
    }
    if (n.leaf) j["leaf"] = leaf_to_json(*n.leaf);
    if (n.witness) j["witness"] = minor_witness_to_json(*n.witness);
    return j;
}

Answer parse_answer(const json& j) {
    auto a = answer_from_string(j.get<std::string>());
    if (!a) throw InputError("unknown answer " + j.dump());
    return *a;
}

DecompositionNode node_from_json(const json& j) {
    DecompositionNode n;
    n.graph = graph_from_json(j.at("graph"));
    n.answer = parse_answer(j.at("answer"));
    n.base_case = j.value("base_case", false);
    if (j.contains("split")) n.split = split_from_json(j.at("split"));
    if (j.contains("children"))
        for (const auto& c : j.at("children")) n.children.push_back(node_from_json(c));
    if (j.contains("leaf")) n.leaf = leaf_from_json(j.at("leaf"));
    if (j.contains("witness")) n.witness = minor_witness_from_json(j.at("witness"));
    return n;
}

} // namespace

json minor_witness_to_json(const MinorWitness& w) {
    json script = json::array();
    for (const MinorOp& op : w.script) script.push_back({{"op", op_name(op.kind)}, {"id", op.id}});
    return {{"target", to_string(w.target)}, {"script", script}, {"isomorphism", isomorphism_to_json(w.isomorphism)}};
}

MinorWitness minor_witness_from_json(const json& j) {
    MinorWitness w;
    auto t = minor_target_from_string(j.at("target").get<std::string>());
    if (!t) throw InputError("unknown minor target " + j.at("target").dump());
    w.target = *t;
    for (const auto& op : j.at("script")) {
        const std::string name = op.at("op").get<std::string>();
        MinorOp m;
        m.id = op.at("id").get<int>();
        if (name == "contract_edge") m.kind = MinorOpKind::contract_edge;
        else if (name == "delete_edge") m.kind = MinorOpKind::delete_edge;
        else if (name == "delete_vertex") m.kind = MinorOpKind::delete_vertex;
        else throw InputError("unknown minor operation " + name);
        w.script.push_back(m);
    }
    w.isomorphism = isomorphism_from_json(j.at("isomorphism"));
    return w;
}

json verdict_to_json(const SignedGraph& g, const Verdict& v) {
    json j = {{"format", "signu-certificate v1"},
              {"input", graph_to_json(g)},
              {"answer", to_string(v.answer)},
              {"tree", node_to_json(v.root)},
              {"notes", v.notes}};
    if (v.odd_cycle) j["odd_cycle"] = walk_to_json(*v.odd_cycle);
    if (v.minor) j["minor"] = minor_witness_to_json(*v.minor);
    return j;
}

std::pair<SignedGraph, Verdict> verdict_from_json(const json& j) {
    Verdict v;
    v.answer = parse_answer(j.at("answer"));
    v.root = node_from_json(j.at("tree"));
    v.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("odd_cycle")) v.odd_cycle = walk_from_json(j.at("odd_cycle"));
    if (j.contains("minor")) v.minor = minor_witness_from_json(j.at("minor"));
    return {graph_from_json(j.at("input")), v};
}

} // namespace signu
