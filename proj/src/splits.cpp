#include "signu/splits.hpp"

#include "signu/errors.hpp"
#include "signu/graph_io.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace signu {

using nlohmann::json;

std::string to_string(Answer a) {
    switch (a) {
    case Answer::nu_le_1:
        return "nu_le_1";
    case Answer::nu_eq_2:
        return "nu_eq_2";
    case Answer::nu_ge_3:
        return "nu_ge_3";
    }
    return "?";
}

std::optional<Answer> answer_from_string(const std::string& s) {
    for (Answer a : {Answer::nu_le_1, Answer::nu_eq_2, Answer::nu_ge_3})
        if (to_string(a) == s) return a;
    return std::nullopt;
}

std::vector<std::vector<EdgeId>> separator_bridges(const SignedGraph& g, const VertexSet& s) {
    std::vector<std::vector<EdgeId>> out;
    SignedGraph rest = delete_vertices(g, s);
    for (const VertexSet& comp : components(rest)) {
        std::vector<EdgeId> b;
        for (const Edge& e : g.edges())
            if (comp.count(e.u) || comp.count(e.v)) b.push_back(e.id);
        if (!b.empty()) out.push_back(std::move(b));
    }
    for (const Edge& e : g.edges())
        if (s.count(e.u) && s.count(e.v)) out.push_back({e.id});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool is_k2eq_subgraph(const SignedGraph& side) {
    if (side.edge_count() > 2) return false;
    VertexSet ends;
    int odd = 0;
    for (const Edge& e : side.edges()) {
        ends.insert(e.u);
        ends.insert(e.v);
        odd += e.odd() ? 1 : 0;
    }
    if (ends.size() > 2) return false;
    return side.edge_count() < 2 || odd == 1;
}

Parity path_parity(const SignedGraph& side, VertexId u, VertexId v) {
    std::map<VertexId, int> pot{{u, 0}};
    std::queue<VertexId> q;
    q.push(u);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        for (EdgeId id : side.incident_edges(x)) {
            const Edge& e = side.edge(id);
            VertexId y = e.other(x);
            int want = pot[x] ^ (e.odd() ? 1 : 0);
            auto it = pot.find(y);
            if (it == pot.end()) {
                pot[y] = want;
                q.push(y);
            } else if (it->second != want) {
                throw InputError("path_parity: side is not bipartite");
            }
        }
    }
    auto it = pot.find(v);
    if (it == pot.end()) throw InputError("path_parity: no path between separator vertices");
    return it->second ? Parity::odd : Parity::even;
}

namespace {

std::vector<EdgeId> flatten(const std::vector<std::vector<EdgeId>>& bridges, std::uint64_t mask, bool inside) {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < bridges.size(); ++i)
        if (((mask >> i) & 1U) == (inside ? 1U : 0U)) out.insert(out.end(), bridges[i].begin(), bridges[i].end());
    std::sort(out.begin(), out.end());
    return out;
}

bool touches_all(const SignedGraph& side, const std::vector<VertexId>& s) {
    return std::all_of(s.begin(), s.end(), [&](VertexId v) { return side.has_vertex(v); });
}

std::vector<EdgeId> complement(const SignedGraph& g, const std::vector<EdgeId>& e1) {
    std::vector<EdgeId> out;
    for (const Edge& e : g.edges())
        if (!std::binary_search(e1.begin(), e1.end(), e.id)) out.push_back(e.id);
    return out;
}

SplitDescription plain_split(const SignedGraph& g, int kind, std::vector<EdgeId> e1, std::vector<VertexId> sep) {
    SplitDescription s;
    s.kind = kind;
    std::sort(e1.begin(), e1.end());
    s.e1 = std::move(e1);
    s.e2 = complement(g, s.e1);
    s.separator = std::move(sep);
    s.parts.push_back(SplitPart{edge_subgraph(g, s.e1), {}, std::nullopt});
    s.parts.push_back(SplitPart{edge_subgraph(g, s.e2), {}, std::nullopt});
    return s;
}

const std::uint64_t kMaxBridges = 24;

} // namespace

std::optional<SplitDescription> find_01_split(const SignedGraph& g) {
    if (g.edge_count() < 2) return std::nullopt;
    SignedGraph core = drop_isolated_vertices(g);
    auto comps = components(core);
    if (comps.size() >= 2) {
        std::vector<EdgeId> e1;
        for (const Edge& e : core.edges())
            if (comps.front().count(e.u)) e1.push_back(e.id);
        return plain_split(g, 0, std::move(e1), {});
    }
    auto cuts = cut_vertices(core);
    if (cuts.empty()) return std::nullopt;
    const VertexId c = cuts.front();
    auto bridges = separator_bridges(core, VertexSet{c});
    return plain_split(g, 1, bridges.front(), {c});
}

std::vector<SplitPart> two_split_parts(const SignedGraph& g, const std::vector<EdgeId>& e1, const std::vector<EdgeId>& e2,
                                       VertexId u, VertexId v) {
    const SignedGraph side1 = edge_subgraph(g, e1), side2 = edge_subgraph(g, e2);
    EdgeId next = g.next_edge_id();
    auto build = [&](const SignedGraph& own, const SignedGraph& other) {
        SplitPart p{own, {}, std::nullopt};
        std::vector<Parity> add;
        if (!is_bipartite(other)) add = {Parity::even, Parity::odd};
        else add = {path_parity(other, u, v)};
        for (Parity par : add) {
            p.graph = p.graph.with_edge(Edge{next, u, v, par});
            p.synthetic.push_back(next++);
        }
        return p;
    };
    std::vector<SplitPart> parts;
    parts.push_back(build(side1, side2));
    parts.push_back(build(side2, side1));
    return parts;
}

std::optional<SplitDescription> find_2_split(const SignedGraph& g) {
    const auto& vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const VertexId u = vs[i], v = vs[j];
            auto bridges = separator_bridges(g, VertexSet{u, v});
            if (bridges.size() < 2 || bridges.size() > kMaxBridges) continue;
            const std::uint64_t full = (std::uint64_t{1} << bridges.size()) - 1;
            // Bridge 0 always sits on side 1, so each unordered bipartition is seen once.
            for (std::uint64_t mask = 1; mask < full; mask += 2) {
                auto e1 = flatten(bridges, mask, true);
                auto e2 = flatten(bridges, mask, false);
                SignedGraph s1 = edge_subgraph(g, e1), s2 = edge_subgraph(g, e2);
                if (!touches_all(s1, {u, v}) || !touches_all(s2, {u, v})) continue;
                if (!is_connected(s1) || !is_connected(s2)) continue;
                if (is_k2eq_subgraph(s1) || is_k2eq_subgraph(s2)) continue;
                auto parts = two_split_parts(g, e1, e2, u, v);
                if (parts[0].graph.edge_count() >= g.edge_count() || parts[1].graph.edge_count() >= g.edge_count()) continue;
                SplitDescription s;
                s.kind = 2;
                s.e1 = std::move(e1);
                s.e2 = std::move(e2);
                s.separator = {u, v};
                s.strong = !is_bipartite(s1) && !is_bipartite(s2);
                s.parts = std::move(parts);
                s.note = "a non-bipartite opposite side contributes an odd and an even replacement edge; "
                         "a bipartite one contributes a single edge of its u-v path parity";
                return s;
            }
        }
    return std::nullopt;
}

SplitPart three_split_part(const SignedGraph& g, const std::vector<EdgeId>& e1, const std::vector<EdgeId>& e2,
                           const std::vector<VertexId>& sep) {
    const SignedGraph side2 = edge_subgraph(g, e2);
    SplitPart p{edge_subgraph(g, e1), {}, g.next_vertex_id()};
    const VertexId w = *p.new_vertex;
    p.graph = p.graph.with_vertex(w);
    EdgeId next = g.next_edge_id();
    for (VertexId ui : sep) {
        Parity par = ui == sep.front() ? Parity::even : path_parity(side2, sep.front(), ui);
        p.graph = p.graph.with_edge(Edge{next, ui, w, par});
        p.synthetic.push_back(next++);
    }
    return p;
}

std::optional<SplitDescription> find_3_split(const SignedGraph& g) {
    const auto& vs = g.vertices();
    const std::size_t n = vs.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                const std::vector<VertexId> sep{vs[a], vs[b], vs[c]};
                auto bridges = separator_bridges(g, VertexSet(sep.begin(), sep.end()));
                if (bridges.size() < 2 || bridges.size() > kMaxBridges) continue;
                const std::uint64_t full = (std::uint64_t{1} << bridges.size()) - 1;
                for (std::uint64_t mask = 1; mask < full; ++mask) {
                    auto e2 = flatten(bridges, mask, true);
                    if (e2.size() < 4) continue;
                    SignedGraph s2 = edge_subgraph(g, e2);
                    if (!touches_all(s2, sep) || !is_connected(s2) || !is_bipartite(s2)) continue;
                    auto e1 = flatten(bridges, mask, false);
                    SignedGraph s1 = edge_subgraph(g, e1);
                    if (!touches_all(s1, sep)) continue;
                    SplitDescription s;
                    s.kind = 3;
                    s.separator = sep;
                    s.parts.push_back(three_split_part(g, e1, e2, sep));
                    s.e1 = std::move(e1);
                    s.e2 = std::move(e2);
                    s.note = "u1 is the smallest separator vertex; u1w is even";
                    return s;
                }
            }
    return std::nullopt;
}

std::optional<SplitDescription> find_split(const SignedGraph& g) {
    if (auto s = find_01_split(g)) return s;
    if (auto s = find_2_split(g)) return s;
    return find_3_split(g);
}

Answer split_nu_recurrence(int kind, const std::vector<Answer>& parts) {
    if (kind == 3) {
        if (parts.size() != 1) throw InputError("a 3-split has exactly one part");
        return parts.front();
    }
    if (kind < 0 || kind > 3) throw InputError("split kind must be 0..3");
    if (parts.size() != 2) throw InputError("a 0-, 1- or 2-split has exactly two parts");
    return std::max(parts[0], parts[1]);
}

json split_to_json(const SplitDescription& s) {
    json parts = json::array();
    for (const SplitPart& p : s.parts) {
        json jp = {{"graph", graph_to_json(p.graph)}, {"synthetic", p.synthetic}};
        if (p.new_vertex) jp["new_vertex"] = *p.new_vertex;
        parts.push_back(jp);
    }
    json j = {{"kind", s.kind}, {"e1", s.e1}, {"e2", s.e2}, {"separator", s.separator}, {"parts", parts}};
    if (s.kind == 2) j["strong"] = s.strong;
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

SplitDescription split_from_json(const json& j) {
    SplitDescription s;
    s.kind = j.at("kind").get<int>();
    s.e1 = j.at("e1").get<std::vector<EdgeId>>();
    s.e2 = j.at("e2").get<std::vector<EdgeId>>();
    s.separator = j.at("separator").get<std::vector<VertexId>>();
    s.strong = j.value("strong", false);
    s.note = j.value("note", "");
    for (const auto& jp : j.at("parts")) {
        SplitPart p{graph_from_json(jp.at("graph")), jp.at("synthetic").get<std::vector<EdgeId>>(), std::nullopt};
        if (jp.contains("new_vertex")) p.new_vertex = jp.at("new_vertex").get<VertexId>();
        s.parts.push_back(std::move(p));
    }
    return s;
}

} // namespace signu
