// Certificate checker. It re-derives everything from core primitives and does not
// call the split finder, the embedding enumerator or the minor search.
#include "signu/pipeline.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>

namespace signu {

namespace {

struct Failure {
    std::string message;
};

[[noreturn]] void reject(const std::string& why) { throw Failure{why}; }

using EdgeKey = std::tuple<EdgeId, VertexId, VertexId, Parity>;

std::set<EdgeKey> edge_keys(const SignedGraph& g) {
    std::set<EdgeKey> out;
    for (const Edge& e : g.edges()) out.insert({e.id, std::min(e.u, e.v), std::max(e.u, e.v), e.parity});
    return out;
}

VertexSet ends(const SignedGraph& g, const std::vector<EdgeId>& ids) {
    VertexSet out;
    for (EdgeId id : ids) {
        const Edge& e = g.edge(id);
        out.insert(e.u);
        out.insert(e.v);
    }
    return out;
}

SignedGraph side(const SignedGraph& g, const std::vector<EdgeId>& ids) {
    std::vector<Edge> es;
    for (EdgeId id : ids) es.push_back(g.edge(id));
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    const VertexSet vs = ends(g, ids);
    return SignedGraph(std::vector<VertexId>(vs.begin(), vs.end()), es);
}

// 0/1 potentials from a BFS; nullopt when some edge contradicts them.
std::optional<std::map<VertexId, int>> potentials(const SignedGraph& g) {
    std::map<VertexId, int> pot;
    for (VertexId root : g.vertices()) {
        if (pot.count(root)) continue;
        pot[root] = 0;
        std::queue<VertexId> q;
        q.push(root);
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop();
            for (EdgeId id : g.incident_edges(x)) {
                const Edge& e = g.edge(id);
                const VertexId y = e.other(x);
                const int want = pot[x] ^ (e.odd() ? 1 : 0);
                auto it = pot.find(y);
                if (it == pot.end()) {
                    pot[y] = want;
                    q.push(y);
                } else if (it->second != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return pot;
}

bool connected(const SignedGraph& g) { return components(g).size() <= 1; }

void check_partition(const SignedGraph& g, const SplitDescription& s) {
    if (s.e1.empty() || s.e2.empty()) reject("a split side is empty");
    std::vector<EdgeId> all = s.e1;
    all.insert(all.end(), s.e2.begin(), s.e2.end());
    std::sort(all.begin(), all.end());
    std::vector<EdgeId> ids;
    for (const Edge& e : g.edges()) ids.push_back(e.id);
    if (all != ids) reject("split sides do not partition the edges");
    const VertexSet v1 = ends(g, s.e1), v2 = ends(g, s.e2);
    std::vector<VertexId> shared;
    std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(shared));
    if (shared != s.separator) reject("separator is not the set of shared vertices");
    if (static_cast<int>(shared.size()) != s.kind) reject("separator size does not match the split kind");
}

// Synthetic edges of a part: everything outside the host's ids. All must join the separator.
std::vector<Edge> synthetic_edges(const SignedGraph& host, const SignedGraph& part) {
    std::vector<Edge> out;
    for (const Edge& e : part.edges())
        if (!host.has_edge(e.id)) out.push_back(e);
    return out;
}

void check_part_keeps(const SignedGraph& host, const SignedGraph& part, const std::vector<EdgeId>& kept) {
    std::set<EdgeKey> want = edge_keys(side(host, kept));
    std::set<EdgeKey> have;
    for (const Edge& e : part.edges())
        if (host.has_edge(e.id)) {
            if (!(host.edge(e.id) == e)) reject("part edge differs from the host edge with the same id");
            have.insert({e.id, std::min(e.u, e.v), std::max(e.u, e.v), e.parity});
        }
    if (have != want) reject("part does not carry exactly its side's edges");
}

void check_two_split(const SignedGraph& g, const SplitDescription& s, const std::vector<DecompositionNode>& kids) {
    const VertexId u = s.separator[0], v = s.separator[1];
    const SignedGraph s1 = side(g, s.e1), s2 = side(g, s.e2);
    for (const SignedGraph* sd : {&s1, &s2}) {
        if (!connected(*sd)) reject("2-split side is not connected");
        const auto pot = potentials(*sd);
        const bool in_k2eq = sd->vertex_count() <= 2 && sd->edge_count() <= 2 && (sd->edge_count() < 2 || !pot);
        if (in_k2eq) reject("2-split side is a signed subgraph of K2=");
    }
    const std::array<const SignedGraph*, 2> other{&s2, &s1};
    const std::array<const std::vector<EdgeId>*, 2> kept{&s.e1, &s.e2};
    for (std::size_t i = 0; i < 2; ++i) {
        const SignedGraph& part = kids[i].graph;
        check_part_keeps(g, part, *kept[i]);
        std::multiset<Parity> got;
        for (const Edge& e : synthetic_edges(g, part)) {
            if (!e.joins(u, v)) reject("2-split replacement edge does not join the separator");
            got.insert(e.parity);
        }
        std::multiset<Parity> want;
        const auto pot = potentials(*other[i]);
        if (!pot) want = {Parity::even, Parity::odd};
        else want = {(pot->at(u) ^ pot->at(v)) ? Parity::odd : Parity::even};
        if (got != want) reject("2-split replacement edges have the wrong parities");
        if (part.edge_count() >= g.edge_count()) reject("2-split part is not smaller than its host");
    }
}

void check_three_split(const SignedGraph& g, const SplitDescription& s, const DecompositionNode& kid) {
    const SignedGraph s2 = side(g, s.e2);
    if (s.e2.size() < 4) reject("3-split bipartite side has fewer than four edges");
    if (!connected(s2)) reject("3-split bipartite side is not connected");
    const auto pot = potentials(s2);
    if (!pot) reject("3-split side is not bipartite");
    const SignedGraph& part = kid.graph;
    check_part_keeps(g, part, s.e1);
    auto extra = synthetic_edges(g, part);
    if (extra.size() != 3) reject("3-split part needs three new edges");
    VertexSet hosts(g.vertices().begin(), g.vertices().end());
    std::optional<VertexId> w;
    std::map<VertexId, Parity> spoke;
    for (const Edge& e : extra) {
        VertexId inside = hosts.count(e.u) ? e.u : e.v;
        VertexId fresh = e.other(inside);
        if (hosts.count(fresh)) reject("3-split new edge does not reach a new vertex");
        if (w && *w != fresh) reject("3-split new edges do not share their new vertex");
        w = fresh;
        spoke[inside] = e.parity;
    }
    std::vector<VertexId> met;
    for (const auto& kv : spoke) met.push_back(kv.first);
    if (met != s.separator) reject("3-split new edges do not meet the separator");
    for (VertexId a : s.separator)
        for (VertexId b : s.separator) {
            const int path = pot->at(a) ^ pot->at(b);
            const int star = (is_odd(spoke[a]) ? 1 : 0) ^ (is_odd(spoke[b]) ? 1 : 0);
            if (path != star) reject("3-split star parities disagree with the bipartite side");
        }
    VertexSet want = ends(g, s.e1);
    want.insert(*w);
    if (VertexSet(part.vertices().begin(), part.vertices().end()) != want) reject("3-split part has the wrong vertices");
}

// Faces of a rotation system: after arriving at y along e, leave along e's successor at y.
std::vector<Walk> faces_of(const SignedGraph& g, const std::map<VertexId, std::vector<EdgeId>>& rot) {
    std::set<std::pair<EdgeId, VertexId>> used;  // (edge, tail)
    std::vector<Walk> out;
    for (const Edge& e0 : g.edges())
        for (VertexId tail0 : {e0.u, e0.v}) {
            if (used.count({e0.id, tail0})) continue;
            Walk w;
            w.vertices.push_back(tail0);
            EdgeId e = e0.id;
            VertexId tail = tail0;
            while (used.insert({e, tail}).second) {
                const VertexId head = g.edge(e).other(tail);
                w.edges.push_back(e);
                w.vertices.push_back(head);
                const auto& r = rot.at(head);
                auto it = std::find(r.begin(), r.end(), e);
                e = (std::next(it) == r.end()) ? r.front() : *std::next(it);
                tail = head;
            }
            out.push_back(std::move(w));
        }
    return out;
}

void check_embedding(const SignedGraph& g, const PlaneEmbedding& emb) {
    for (VertexId v : g.vertices()) {
        auto it = emb.rotation.find(v);
        std::vector<EdgeId> want = g.incident_edges(v), have = it == emb.rotation.end() ? std::vector<EdgeId>{} : it->second;
        std::sort(want.begin(), want.end());
        std::sort(have.begin(), have.end());
        if (want != have) reject("rotation at vertex " + std::to_string(v) + " is not its edge list");
    }
    if (emb.rotation.size() != g.vertex_count()) reject("rotation names vertices outside the graph");
    const auto faces = faces_of(g, emb.rotation);
    int isolated = 0, odd = 0;
    for (VertexId v : g.vertices()) isolated += g.degree(v) == 0 ? 1 : 0;
    for (const Walk& f : faces) {
        int k = 0;
        for (EdgeId id : f.edges) k += g.edge(id).odd() ? 1 : 0;
        odd += k % 2;
    }
    const int c = static_cast<int>(components(g).size());
    const int euler = static_cast<int>(g.vertex_count()) - static_cast<int>(g.edge_count()) + static_cast<int>(faces.size()) + isolated;
    if (euler != 2 * c) reject("rotation system is not planar");
    if (odd > 2) reject("embedding has more than two odd faces");
}

void check_leaf(const DecompositionNode& n) {
    const SignedGraph& g = n.graph;
    const bool bip = potentials(g).has_value();
    if (n.witness) {
        if (n.answer != Answer::nu_ge_3) reject("minor witness on a leaf not answering nu_ge_3");
        if (n.witness->target == MinorTarget::k2eq) reject("K2= is not a bad minor");
        if (!check_minor_witness(g, *n.witness)) reject("leaf minor witness does not replay");
        return;
    }
    if (!n.leaf) reject("leaf without evidence");
    const LeafClass& leaf = *n.leaf;
    switch (leaf.tag) {
    case LeafTag::bipartite:
        if (!bip) reject("leaf marked bipartite has an odd cycle");
        if (n.answer != Answer::nu_le_1) reject("bipartite leaf must answer nu_le_1");
        return;
    case LeafTag::almost_bipartite:
        if (!leaf.hit_vertex || !g.has_vertex(*leaf.hit_vertex)) reject("almost-bipartite leaf lacks its vertex");
        if (!potentials(delete_vertex(g, *leaf.hit_vertex))) reject("deleting the recorded vertex leaves an odd cycle");
        break;
    case LeafTag::planar_two_odd_faces:
        if (!leaf.embedding) reject("planar leaf lacks its embedding");
        check_embedding(g, *leaf.embedding);
        break;
    case LeafTag::double_prism:
        if (!leaf.isomorphism || !is_signed_isomorphism(g, make_double_prism(), *leaf.isomorphism))
            reject("double prism isomorphism does not check");
        break;
    }
    if (bip) reject("non-bipartite leaf class on a bipartite graph");
    if (n.answer != Answer::nu_eq_2) reject("classified non-bipartite leaf must answer nu_eq_2");
}

void check_node(const DecompositionNode& n, std::string& where) {
    const bool small = n.graph.vertex_count() <= 2 || n.graph.edge_count() <= 2;
    if (n.base_case != small) reject("base-case flag is wrong");
    if ((n.answer == Answer::nu_le_1) != potentials(n.graph).has_value()) reject("answer contradicts the odd-cycle test");
    if (!n.split) {
        if (!n.children.empty()) reject("leaf with children");
        check_leaf(n);
        return;
    }
    const SplitDescription& s = *n.split;
    check_partition(n.graph, s);
    const std::size_t want_parts = s.kind == 3 ? 1 : 2;
    if (n.children.size() != want_parts || s.parts.size() != want_parts) reject("wrong number of split parts");
    for (std::size_t i = 0; i < want_parts; ++i)
        if (!(s.parts[i].graph == n.children[i].graph)) reject("child graph differs from the recorded part");
    if (s.kind <= 1) {
        check_part_keeps(n.graph, n.children[0].graph, s.e1);
        check_part_keeps(n.graph, n.children[1].graph, s.e2);
        for (const auto& c : n.children)
            if (!synthetic_edges(n.graph, c.graph).empty()) reject("0/1-split part has extra edges");
    } else if (s.kind == 2) {
        check_two_split(n.graph, s, n.children);
    } else if (s.kind == 3) {
        check_three_split(n.graph, s, n.children[0]);
    } else {
        reject("unknown split kind");
    }
    Answer combined = n.children[0].answer;
    for (const auto& c : n.children) combined = std::max(combined, c.answer);
    if (combined != n.answer) reject("split answer does not follow from its parts");
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        const std::size_t mark = where.size();
        where += (where.empty() ? "" : "/") + std::to_string(i);
        check_node(n.children[i], where);
        where.resize(mark);
    }
}

} // namespace

ValidationResult validate_verdict(const SignedGraph& g, const Verdict& v) {
    ValidationResult r;
    std::string where;
    try {
        if (v.answer != v.root.answer) reject("verdict answer differs from the tree");
        const bool bip = potentials(g).has_value();
        SignedGraph expected = bip ? g : drop_isolated_vertices(g);
        if (!(v.root.graph == expected)) reject("tree root is not the input graph");
        if (v.answer != Answer::nu_le_1) {
            if (!v.odd_cycle || !is_cycle(g, *v.odd_cycle) || walk_parity(g, *v.odd_cycle) != Parity::odd)
                reject("missing or invalid odd cycle");
        }
        if (v.answer == Answer::nu_ge_3) {
            if (!v.minor || v.minor->target == MinorTarget::k2eq || !check_minor_witness(g, *v.minor))
                reject("missing or invalid bad minor");
        }
        check_node(v.root, where);
    } catch (const Failure& f) {
        r.node = where;
        r.message = f.message;
        return r;
    } catch (const std::exception& ex) {
        r.node = where;
        r.message = std::string("malformed certificate: ") + ex.what();
        return r;
    }
    r.ok = true;
    return r;
}

} // namespace signu
