#include "signu/deltawye.hpp"

#include "signu/classify.hpp"
#include "signu/errors.hpp"
#include "signu/graph_io.hpp"

#include <algorithm>
#include <unordered_set>

namespace signu {

using nlohmann::json;

namespace {

const std::vector<MoveKind> kAllKinds{MoveKind::series,  MoveKind::parallel, MoveKind::parallel_series, MoveKind::delta_p2,
                                      MoveKind::y_delta, MoveKind::delta_y,  MoveKind::degree_one};

[[noreturn]] void fail(MoveKind k, const std::string& why) { throw MoveError(to_string(k) + ": " + why); }

struct Triangle {
    std::vector<VertexId> vertices;  // sorted
    int odd = 0;
};

Triangle check_triangle(const SignedGraph& g, const std::vector<EdgeId>& ids, MoveKind k) {
    if (ids.size() != 3) fail(k, "a triangle needs three edges");
    VertexSet vs;
    Triangle t;
    for (EdgeId id : ids) {
        if (!g.has_edge(id)) fail(k, "unknown edge " + std::to_string(id));
        const Edge& e = g.edge(id);
        vs.insert(e.u);
        vs.insert(e.v);
        t.odd += e.odd() ? 1 : 0;
    }
    if (vs.size() != 3) fail(k, "edges do not form a triangle");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (g.edge(ids[i]).joins(g.edge(ids[j]).u, g.edge(ids[j]).v)) fail(k, "edges do not form a triangle");
    t.vertices.assign(vs.begin(), vs.end());
    return t;
}

SignedGraph without(const SignedGraph& g, const std::vector<EdgeId>& gone, std::optional<VertexId> drop = std::nullopt) {
    std::vector<Edge> es;
    for (const Edge& e : g.edges())
        if (std::find(gone.begin(), gone.end(), e.id) == gone.end()) es.push_back(e);
    std::vector<VertexId> vs;
    for (VertexId v : g.vertices())
        if (!drop || v != *drop) vs.push_back(v);
    return SignedGraph(std::move(vs), std::move(es));
}

SignedGraph with_edges(SignedGraph g, const std::vector<Edge>& add) {
    for (const Edge& e : add) g = g.with_edge(e);
    return g;
}

SignedGraph do_series(const SignedGraph& g, Move& m) {
    const VertexId v = m.vertex.value_or(0);
    if (!g.has_vertex(v) || g.degree(v) != 2 || g.neighbours(v).size() != 2) fail(m.kind, "needs a degree-2 vertex with two neighbours");
    auto inc = g.incident_edges(v);
    const Edge &a = g.edge(inc[0]), &b = g.edge(inc[1]);
    auto nb = g.neighbours(v);
    m.created = {Edge{g.next_edge_id(), nb[0], nb[1], a.parity ^ b.parity}};
    m.deleted = inc;
    return with_edges(without(g, inc, v), m.created);
}

SignedGraph do_parallel(const SignedGraph& g, Move& m) {
    if (m.edges.size() != 2) fail(m.kind, "needs two edges");
    EdgeId keep = std::min(m.edges[0], m.edges[1]), drop = std::max(m.edges[0], m.edges[1]);
    if (keep == drop || !g.has_edge(keep) || !g.has_edge(drop)) fail(m.kind, "needs two distinct existing edges");
    const Edge &e = g.edge(keep), &f = g.edge(drop);
    if (!e.joins(f.u, f.v)) fail(m.kind, "edges are not parallel");
    if (e.parity != f.parity) fail(m.kind, "parallel edges of different parity form an odd 2-cycle");
    m.edges = {keep, drop};
    m.deleted = {drop};
    return without(g, {drop});
}

SignedGraph do_parallel_series(const SignedGraph& g, Move& m) {
    const VertexId v = m.vertex.value_or(0);
    if (!g.has_vertex(v) || g.degree(v) != 3) fail(m.kind, "needs a vertex of degree 3");
    auto inc = g.incident_edges(v);
    for (std::size_t skip = 0; skip < 3; ++skip) {
        const Edge& gx = g.edge(inc[skip]);
        const Edge& e = g.edge(inc[(skip + 1) % 3]);
        const Edge& f = g.edge(inc[(skip + 2) % 3]);
        if (!e.joins(f.u, f.v) || e.parity == f.parity) continue;
        if (gx.joins(e.u, e.v)) continue;
        m.deleted = {gx.id};
        m.edges = {gx.id};
        return contract_edge(g, gx.id);
    }
    fail(m.kind, "vertex does not end an odd/even parallel pair with one further edge");
}

SignedGraph do_y_delta(const SignedGraph& g, Move& m) {
    const VertexId v = m.vertex.value_or(0);
    if (!g.has_vertex(v) || g.degree(v) != 3 || g.neighbours(v).size() != 3) fail(m.kind, "needs a degree-3 vertex with three neighbours");
    auto inc = g.incident_edges(v);
    std::map<VertexId, Parity> spoke;
    for (EdgeId id : inc) spoke[g.edge(id).other(v)] = g.edge(id).parity;
    auto nb = g.neighbours(v);
    EdgeId next = g.next_edge_id();
    m.created.clear();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) m.created.push_back(Edge{next++, nb[i], nb[j], spoke[nb[i]] ^ spoke[nb[j]]});
    m.deleted = inc;
    return with_edges(without(g, inc, v), m.created);
}

SignedGraph do_delta_y(const SignedGraph& g, Move& m) {
    Triangle t = check_triangle(g, m.edges, m.kind);
    if (t.odd % 2) fail(m.kind, "odd triangles are not exchanged");
    std::map<VertexId, int> odd_at;
    for (EdgeId id : m.edges)
        if (g.edge(id).odd()) {
            ++odd_at[g.edge(id).u];
            ++odd_at[g.edge(id).v];
        }
    const VertexId w = g.next_vertex_id();
    EdgeId next = g.next_edge_id();
    m.created.clear();
    for (VertexId x : t.vertices) m.created.push_back(Edge{next++, x, w, odd_at[x] == 2 ? Parity::odd : Parity::even});
    m.deleted = m.edges;
    m.new_vertex = w;
    return with_edges(without(g, m.edges).with_vertex(w), m.created);
}

SignedGraph do_delta_p2(const SignedGraph& g, Move& m) {
    Triangle t = check_triangle(g, m.edges, m.kind);
    std::vector<VertexId> low;
    for (VertexId x : t.vertices)
        if (g.degree(x) == 2) low.push_back(x);
    if (low.size() != 1) fail(m.kind, "needs exactly one triangle vertex of degree 2");
    for (EdgeId id : m.edges)
        if (!g.edge(id).incident(low.front())) {
            m.deleted = {id};
            return without(g, {id});
        }
    fail(m.kind, "no edge opposite the degree-2 vertex");
}

SignedGraph do_degree_one(const SignedGraph& g, Move& m) {
    const VertexId v = m.vertex.value_or(0);
    if (!g.has_vertex(v) || g.degree(v) != 1) fail(m.kind, "needs a vertex of degree 1");
    m.deleted = g.incident_edges(v);
    return without(g, m.deleted, v);
}

std::vector<std::vector<EdgeId>> triangles(const SignedGraph& g) {
    std::vector<std::vector<EdgeId>> out;
    const auto& vs = g.vertices();
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            auto ab = g.edges_between(vs[a], vs[b]);
            if (ab.empty()) continue;
            for (std::size_t c = b + 1; c < vs.size(); ++c) {
                auto bc = g.edges_between(vs[b], vs[c]);
                auto ac = g.edges_between(vs[a], vs[c]);
                for (EdgeId x : ab)
                    for (EdgeId y : bc)
                        for (EdgeId z : ac) out.push_back({x, y, z});
            }
        }
    return out;
}

bool is_k2eq(const SignedGraph& g) { return g.vertex_count() == 2 && g.edge_count() == 2 && !is_bipartite(g); }

} // namespace

std::string to_string(MoveKind k) {
    switch (k) {
    case MoveKind::series:
        return "series";
    case MoveKind::parallel:
        return "parallel";
    case MoveKind::parallel_series:
        return "parallel_series";
    case MoveKind::delta_p2:
        return "delta_p2";
    case MoveKind::y_delta:
        return "y_delta";
    case MoveKind::delta_y:
        return "delta_y";
    case MoveKind::degree_one:
        return "degree_one";
    }
    return "?";
}

std::optional<MoveKind> move_kind_from_string(const std::string& s) {
    for (MoveKind k : kAllKinds)
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::string to_string(NuEffect e) { return e == NuEffect::preserves ? "preserves" : "does_not_decrease"; }

NuEffect expected_effect(MoveKind k) {
    return (k == MoveKind::y_delta || k == MoveKind::delta_y) ? NuEffect::does_not_decrease : NuEffect::preserves;
}

bool is_reduction(MoveKind k) { return k != MoveKind::y_delta && k != MoveKind::delta_y; }

SignedGraph apply_move(const SignedGraph& g, Move& m) {
    m.created.clear();
    m.deleted.clear();
    m.new_vertex.reset();
    m.effect = expected_effect(m.kind);
    switch (m.kind) {
    case MoveKind::series:
        return do_series(g, m);
    case MoveKind::parallel:
        return do_parallel(g, m);
    case MoveKind::parallel_series:
        return do_parallel_series(g, m);
    case MoveKind::delta_p2:
        return do_delta_p2(g, m);
    case MoveKind::y_delta:
        return do_y_delta(g, m);
    case MoveKind::delta_y:
        return do_delta_y(g, m);
    case MoveKind::degree_one:
        return do_degree_one(g, m);
    }
    throw MoveError("unknown move kind");
}

SignedGraph series_reduce(const SignedGraph& g, VertexId v) {
    Move m{MoveKind::series, v, {}, {}, {}, {}, {}};
    return apply_move(g, m);
}

SignedGraph parallel_reduce(const SignedGraph& g, EdgeId e, EdgeId f) {
    Move m{MoveKind::parallel, std::nullopt, {e, f}, {}, {}, {}, {}};
    return apply_move(g, m);
}

SignedGraph parallel_series_reduce(const SignedGraph& g, VertexId v) {
    Move m{MoveKind::parallel_series, v, {}, {}, {}, {}, {}};
    return apply_move(g, m);
}

SignedGraph y_delta(const SignedGraph& g, VertexId v) {
    Move m{MoveKind::y_delta, v, {}, {}, {}, {}, {}};
    return apply_move(g, m);
}

SignedGraph delta_y(const SignedGraph& g, const std::vector<EdgeId>& triangle) {
    Move m{MoveKind::delta_y, std::nullopt, triangle, {}, {}, {}, {}};
    return apply_move(g, m);
}

SignedGraph delta_p2(const SignedGraph& g, const std::vector<EdgeId>& triangle) {
    Move m{MoveKind::delta_p2, std::nullopt, triangle, {}, {}, {}, {}};
    return apply_move(g, m);
}

SignedGraph degree_one_reduce(const SignedGraph& g, VertexId v) {
    Move m{MoveKind::degree_one, v, {}, {}, {}, {}, {}};
    return apply_move(g, m);
}

std::vector<Move> candidate_moves(const SignedGraph& g, MoveKind kind) {
    std::vector<Move> out;
    auto by_vertex = [&](auto&& ok) {
        for (VertexId v : g.vertices())
            if (ok(v)) out.push_back(Move{kind, v, {}, {}, {}, {}, {}});
    };
    switch (kind) {
    case MoveKind::series:
        by_vertex([&](VertexId v) { return g.degree(v) == 2 && g.neighbours(v).size() == 2; });
        break;
    case MoveKind::y_delta:
        by_vertex([&](VertexId v) { return g.degree(v) == 3 && g.neighbours(v).size() == 3; });
        break;
    case MoveKind::degree_one:
        by_vertex([&](VertexId v) { return g.degree(v) == 1; });
        break;
    case MoveKind::parallel_series:
        by_vertex([&](VertexId v) {
            if (g.degree(v) != 3) return false;
            Move probe{kind, v, {}, {}, {}, {}, {}};
            try {
                do_parallel_series(g, probe);
                return true;
            } catch (const MoveError&) {
                return false;
            }
        });
        break;
    case MoveKind::parallel: {
        std::map<std::tuple<VertexId, VertexId, Parity>, std::vector<EdgeId>> classes;
        for (const Edge& e : g.edges()) classes[{std::min(e.u, e.v), std::max(e.u, e.v), e.parity}].push_back(e.id);
        for (auto& [key, ids] : classes)
            if (ids.size() >= 2) out.push_back(Move{kind, std::nullopt, {ids[0], ids[1]}, {}, {}, {}, {}});
        std::sort(out.begin(), out.end(), [](const Move& a, const Move& b) { return a.edges < b.edges; });
        break;
    }
    case MoveKind::delta_y:
        for (auto& t : triangles(g)) {
            int odd = 0;
            for (EdgeId id : t) odd += g.edge(id).odd() ? 1 : 0;
            if (odd % 2 == 0) out.push_back(Move{kind, std::nullopt, t, {}, {}, {}, {}});
        }
        break;
    case MoveKind::delta_p2:
        for (auto& t : triangles(g)) {
            int low = 0;
            VertexSet vs;
            for (EdgeId id : t) vs.insert({g.edge(id).u, g.edge(id).v});
            for (VertexId x : vs) low += g.degree(x) == 2 ? 1 : 0;
            if (low == 1) out.push_back(Move{kind, std::nullopt, t, {}, {}, {}, {}});
        }
        break;
    }
    return out;
}

namespace {

class Engine {
public:
    Engine(const EngineOptions& opt) : opt_(opt) {}

    bool search(const SignedGraph& g, std::vector<Move>& path, std::map<MoveKind, int>& used) {
        if (is_k2eq(g)) return true;
        for (MoveKind kind : opt_.order) {
            auto lim = opt_.kind_limit.find(kind);
            if (lim != opt_.kind_limit.end() && used[kind] >= lim->second) continue;
            for (Move m : candidate_moves(g, kind)) {
                if (kind == MoveKind::delta_p2 && triangle_is_odd(g, m.edges)) continue;
                SignedGraph next = apply_move(g, m);
                check_progress(g, next, m);
                if (is_bipartite(next)) continue;
                if (!visited_.insert(memo_key(next, used, kind)).second) continue;
                if (++states_ > opt_.max_states) {
                    throw CapacityError("reduction search exceeded " + std::to_string(opt_.max_states) + " states");
                }
                if (opt_.require_block && !is_block(next)) continue;
                if (opt_.require_two_odd_faces) {
                    auto emb = two_odd_faces(next);
                    if (!emb || emb->odd_faces != 2) continue;
                }
                path.push_back(m);
                ++used[kind];
                if (search(next, path, used)) return true;
                --used[kind];
                path.pop_back();
            }
        }
        return false;
    }

private:
    static bool triangle_is_odd(const SignedGraph& g, const std::vector<EdgeId>& t) {
        int odd = 0;
        for (EdgeId id : t) odd += g.edge(id).odd() ? 1 : 0;
        return odd % 2 == 1;
    }

    static void check_progress(const SignedGraph& before, const SignedGraph& after, const Move& m) {
        const bool ok = is_reduction(m.kind) ? after.edge_count() < before.edge_count() : after.edge_count() == before.edge_count();
        if (!ok) throw InternalError(to_string(m.kind) + " changed the edge count unexpectedly");
    }

    std::string memo_key(const SignedGraph& g, const std::map<MoveKind, int>& used, MoveKind just) const {
        std::string key = canonical_key(g);
        if (opt_.kind_limit.empty()) return key;
        for (auto [kind, lim] : opt_.kind_limit) {
            auto it = used.find(kind);
            int n = (it == used.end() ? 0 : it->second) + (kind == just ? 1 : 0);
            key += "|" + std::to_string(std::min(n, lim));
        }
        return key;
    }

    const EngineOptions& opt_;
    std::unordered_set<std::string> visited_;
    std::size_t states_ = 0;
};

} // namespace

ReductionTrace reduce_to_k2eq(const SignedGraph& g, const EngineOptions& options) {
    if (g.edge_count() > kDeskEdgeCap) throw CapacityError("reduction is limited to " + std::to_string(kDeskEdgeCap) + " edges");
    if (is_bipartite(g)) throw InputError("reduce: the graph is bipartite, so it cannot reach K2=");
    if (options.require_block && !is_block(g)) throw InputError("reduce: the graph is not a block");
    if (options.require_two_odd_faces) {
        auto emb = two_odd_faces(g);
        if (!emb || emb->odd_faces != 2) throw InputError("reduce: no plane embedding with exactly two odd faces");
    }
    ReductionTrace trace;
    trace.initial = g;
    Engine engine(options);
    std::map<MoveKind, int> used;
    if (!engine.search(g, trace.moves, used)) {
        throw InternalError("reduce: search exhausted without reaching K2= on " + describe(g));
    }
    SignedGraph cur = g;
    for (Move& m : trace.moves) cur = apply_move(cur, m);
    trace.final_graph = cur;
    return trace;
}

ReplayResult replay(const ReductionTrace& trace) {
    ReplayResult r;
    SignedGraph cur = trace.initial;
    for (std::size_t i = 0; i < trace.moves.size(); ++i) {
        const Move& recorded = trace.moves[i];
        Move m{recorded.kind, recorded.vertex, recorded.edges, {}, {}, {}, {}};
        try {
            cur = apply_move(cur, m);
        } catch (const MoveError& ex) {
            r.failing_index = i;
            r.message = ex.what();
            return r;
        }
        if (m.created != recorded.created || m.deleted != recorded.deleted || m.new_vertex != recorded.new_vertex ||
            recorded.effect != expected_effect(recorded.kind)) {
            r.failing_index = i;
            r.message = "move " + std::to_string(i) + " does not reproduce its recorded effect";
            return r;
        }
    }
    if (!(cur == trace.final_graph)) {
        r.failing_index = trace.moves.size();
        r.message = "final graph differs";
        return r;
    }
    r.ok = true;
    r.failing_index = trace.moves.size();
    return r;
}

json move_to_json(const Move& m) {
    json created = json::array();
    for (const Edge& e : m.created) created.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"odd", e.odd()}});
    json j = {{"kind", to_string(m.kind)}, {"edges", m.edges}, {"created", created}, {"deleted", m.deleted},
              {"nu_effect", to_string(m.effect)}};
    if (m.vertex) j["vertex"] = *m.vertex;
    if (m.new_vertex) j["new_vertex"] = *m.new_vertex;
    return j;
}

Move move_from_json(const json& j) {
    Move m;
    auto kind = move_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw InputError("unknown move kind " + j.at("kind").dump());
    m.kind = *kind;
    if (j.contains("vertex")) m.vertex = j.at("vertex").get<VertexId>();
    if (j.contains("new_vertex")) m.new_vertex = j.at("new_vertex").get<VertexId>();
    m.edges = j.at("edges").get<std::vector<EdgeId>>();
    m.deleted = j.at("deleted").get<std::vector<EdgeId>>();
    for (const auto& e : j.at("created"))
        m.created.push_back(Edge{e.at("id").get<EdgeId>(), e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                                 e.at("odd").get<bool>() ? Parity::odd : Parity::even});
    m.effect = j.at("nu_effect").get<std::string>() == "preserves" ? NuEffect::preserves : NuEffect::does_not_decrease;
    return m;
}

json trace_to_json(const ReductionTrace& t) {
    json moves = json::array();
    for (const Move& m : t.moves) moves.push_back(move_to_json(m));
    return {{"initial", graph_to_json(t.initial)}, {"moves", moves}, {"final", graph_to_json(t.final_graph)}};
}

ReductionTrace trace_from_json(const json& j) {
    ReductionTrace t;
    t.initial = graph_from_json(j.at("initial"));
    for (const auto& m : j.at("moves")) t.moves.push_back(move_from_json(m));
    t.final_graph = graph_from_json(j.at("final"));
    return t;
}

} // namespace signu
