#include "signu/signed_graph.hpp"

#include "signu/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

namespace signu {

namespace {

std::string vertex_error(VertexId v) { return "unknown vertex " + std::to_string(v); }

} // namespace

SignedGraph::SignedGraph(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
        throw InputError("duplicate vertex identifier");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (i > 0 && edges_[i - 1].id == e.id) {
            throw InputError("duplicate edge identifier " + std::to_string(e.id));
        }
        if (e.u == e.v) {
            throw InputError("edge " + std::to_string(e.id) + " is a loop at vertex " + std::to_string(e.u));
        }
        if (!has_vertex(e.u) || !has_vertex(e.v)) {
            throw InputError("edge " + std::to_string(e.id) + " has an undeclared endpoint");
        }
    }
}

SignedGraph SignedGraph::build(int n, const std::vector<std::tuple<VertexId, VertexId, Parity>>& edges) {
    std::vector<VertexId> vs(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = i + 1;
    std::vector<Edge> es;
    es.reserve(edges.size());
    EdgeId id = 0;
    for (const auto& [u, v, p] : edges) es.push_back(Edge{id++, u, v, p});
    return SignedGraph(std::move(vs), std::move(es));
}

bool SignedGraph::has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool SignedGraph::has_edge(EdgeId e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e, [](const Edge& a, EdgeId id) { return a.id < id; });
    return it != edges_.end() && it->id == e;
}

const Edge& SignedGraph::edge(EdgeId e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e, [](const Edge& a, EdgeId id) { return a.id < id; });
    if (it == edges_.end() || it->id != e) throw InputError("unknown edge " + std::to_string(e));
    return *it;
}

std::size_t SignedGraph::vertex_index(VertexId v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) throw InputError(vertex_error(v));
    return static_cast<std::size_t>(it - vertices_.begin());
}

int SignedGraph::degree(VertexId v) const {
    if (!has_vertex(v)) throw InputError(vertex_error(v));
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.incident(v); }));
}

std::vector<EdgeId> SignedGraph::incident_edges(VertexId v) const {
    if (!has_vertex(v)) throw InputError(vertex_error(v));
    std::vector<EdgeId> out;
    for (const Edge& e : edges_)
        if (e.incident(v)) out.push_back(e.id);
    return out;
}

std::vector<EdgeId> SignedGraph::edges_between(VertexId a, VertexId b) const {
    std::vector<EdgeId> out;
    for (const Edge& e : edges_)
        if (e.joins(a, b)) out.push_back(e.id);
    return out;
}

std::vector<VertexId> SignedGraph::neighbours(VertexId v) const {
    if (!has_vertex(v)) throw InputError(vertex_error(v));
    std::vector<VertexId> out;
    for (const Edge& e : edges_)
        if (e.incident(v)) out.push_back(e.other(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexSet SignedGraph::odd_edge_ids() const {
    VertexSet out;
    for (const Edge& e : edges_)
        if (e.odd()) out.insert(e.id);
    return out;
}

SignedGraph SignedGraph::with_vertex(VertexId v) const {
    auto vs = vertices_;
    vs.push_back(v);
    return SignedGraph(std::move(vs), edges_);
}

SignedGraph SignedGraph::with_edge(VertexId u, VertexId v, Parity p) const {
    return with_edge(Edge{next_edge_id(), u, v, p});
}

SignedGraph SignedGraph::with_edge(Edge e) const {
    auto es = edges_;
    es.push_back(e);
    return SignedGraph(vertices_, std::move(es));
}

SignedGraph SignedGraph::with_parities(const std::vector<Parity>& parity_by_position) const {
    if (parity_by_position.size() != edges_.size()) throw InputError("parity vector length mismatch");
    auto es = edges_;
    for (std::size_t i = 0; i < es.size(); ++i) es[i].parity = parity_by_position[i];
    return SignedGraph(vertices_, std::move(es));
}

// --- re-signing and parity -----------------------------------------------------

SignedGraph resign(const SignedGraph& g, const VertexSet& u) {
    for (VertexId v : u)
        if (!g.has_vertex(v)) throw InputError(vertex_error(v));
    auto es = g.edges();
    for (Edge& e : es) {
        if (u.count(e.u) != u.count(e.v)) e.parity = flip(e.parity);
    }
    return SignedGraph(g.vertices(), std::move(es));
}

bool is_valid_walk(const SignedGraph& g, const Walk& w) {
    if (w.vertices.size() != w.edges.size() + 1) return false;
    for (VertexId v : w.vertices)
        if (!g.has_vertex(v)) return false;
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
        if (!g.has_edge(w.edges[i])) return false;
        if (!g.edge(w.edges[i]).joins(w.vertices[i], w.vertices[i + 1])) return false;
    }
    return true;
}

Parity walk_parity(const SignedGraph& g, const Walk& w) {
    if (!is_valid_walk(g, w)) throw InputError("walk does not follow incidences of the graph");
    Parity p = Parity::even;
    for (EdgeId e : w.edges) p = p ^ g.edge(e).parity;
    return p;
}

bool is_cycle(const SignedGraph& g, const Walk& w) {
    if (!is_valid_walk(g, w) || !w.closed() || w.edges.empty()) return false;
    std::vector<VertexId> inner(w.vertices.begin(), w.vertices.end() - 1);
    std::sort(inner.begin(), inner.end());
    if (std::adjacent_find(inner.begin(), inner.end()) != inner.end()) return false;
    std::vector<EdgeId> es = w.edges;
    std::sort(es.begin(), es.end());
    return std::adjacent_find(es.begin(), es.end()) == es.end();
}

namespace {

/// BFS forest with parity potentials. Returns the first edge closing an odd cycle, if any.
struct ParityForest {
    std::vector<int> potential;    // by vertex index, -1 = unvisited
    std::vector<int> parent_edge;  // edge position, -1 for roots
    std::vector<std::size_t> parent_vertex;
    std::vector<int> depth;
    std::optional<std::size_t> conflict_edge;  // edge position
};

ParityForest build_parity_forest(const SignedGraph& g) {
    const std::size_t n = g.vertex_count();
    ParityForest f;
    f.potential.assign(n, -1);
    f.parent_edge.assign(n, -1);
    f.parent_vertex.assign(n, 0);
    f.depth.assign(n, 0);
    std::vector<std::vector<std::size_t>> inc(n);
    const auto& es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        inc[g.vertex_index(es[i].u)].push_back(i);
        inc[g.vertex_index(es[i].v)].push_back(i);
    }
    for (std::size_t root = 0; root < n; ++root) {
        if (f.potential[root] >= 0) continue;
        f.potential[root] = 0;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            std::size_t x = q.front();
            q.pop();
            for (std::size_t ei : inc[x]) {
                const Edge& e = es[ei];
                std::size_t y = g.vertex_index(e.other(g.vertices()[x]));
                int want = f.potential[x] ^ static_cast<int>(e.parity);
                if (f.potential[y] < 0) {
                    f.potential[y] = want;
                    f.parent_edge[y] = static_cast<int>(ei);
                    f.parent_vertex[y] = x;
                    f.depth[y] = f.depth[x] + 1;
                    q.push(y);
                } else if (f.potential[y] != want && !f.conflict_edge) {
                    f.conflict_edge = ei;
                }
            }
        }
    }
    return f;
}

} // namespace

bool is_bipartite(const SignedGraph& g) { return !build_parity_forest(g).conflict_edge.has_value(); }

std::optional<Walk> find_odd_cycle(const SignedGraph& g) {
    ParityForest f = build_parity_forest(g);
    if (!f.conflict_edge) return std::nullopt;
    const Edge& closing = g.edges()[*f.conflict_edge];
    std::size_t a = g.vertex_index(closing.u);
    std::size_t b = g.vertex_index(closing.v);
    // Climb to the lowest common ancestor.
    std::vector<std::size_t> up_a{a}, up_b{b};
    std::vector<EdgeId> edges_a, edges_b;
    std::size_t x = a, y = b;
    while (f.depth[x] > f.depth[y]) {
        edges_a.push_back(g.edges()[static_cast<std::size_t>(f.parent_edge[x])].id);
        x = f.parent_vertex[x];
        up_a.push_back(x);
    }
    while (f.depth[y] > f.depth[x]) {
        edges_b.push_back(g.edges()[static_cast<std::size_t>(f.parent_edge[y])].id);
        y = f.parent_vertex[y];
        up_b.push_back(y);
    }
    while (x != y) {
        edges_a.push_back(g.edges()[static_cast<std::size_t>(f.parent_edge[x])].id);
        x = f.parent_vertex[x];
        up_a.push_back(x);
        edges_b.push_back(g.edges()[static_cast<std::size_t>(f.parent_edge[y])].id);
        y = f.parent_vertex[y];
        up_b.push_back(y);
    }
    Walk w;
    for (std::size_t v : up_a) w.vertices.push_back(g.vertices()[v]);
    w.edges = edges_a;
    for (std::size_t i = up_b.size() - 1; i-- > 0;) {
        w.vertices.push_back(g.vertices()[up_b[i]]);
        w.edges.push_back(edges_b[i]);
    }
    w.vertices.push_back(g.vertices()[a]);
    w.edges.push_back(closing.id);
    return w;
}

std::optional<VertexSet> sign_equivalent(const SignedGraph& g1, const SignedGraph& g2) {
    if (g1.vertices() != g2.vertices() || g1.edge_count() != g2.edge_count()) {
        throw InputError("sign_equivalent: underlying graphs differ");
    }
    std::vector<Parity> diff(g1.edge_count());
    for (std::size_t i = 0; i < g1.edge_count(); ++i) {
        const Edge& a = g1.edges()[i];
        const Edge& b = g2.edges()[i];
        if (a.id != b.id || !a.joins(b.u, b.v)) throw InputError("sign_equivalent: underlying graphs differ");
        diff[i] = a.parity ^ b.parity;
    }
    SignedGraph d = g1.with_parities(diff);
    ParityForest f = build_parity_forest(d);
    if (f.conflict_edge) return std::nullopt;
    VertexSet u;
    for (std::size_t i = 0; i < d.vertex_count(); ++i)
        if (f.potential[i] == 1) u.insert(d.vertices()[i]);
    return u;
}

SignedGraph all_even(const SignedGraph& g) {
    return g.with_parities(std::vector<Parity>(g.edge_count(), Parity::even));
}

// --- minor operations ----------------------------------------------------------

SignedGraph contract_edge(const SignedGraph& g, EdgeId id) {
    const Edge e = g.edge(id);
    SignedGraph h = e.odd() ? resign(g, VertexSet{e.u}) : g;
    std::vector<Edge> es;
    es.reserve(h.edge_count());
    for (Edge f : h.edges()) {
        if (f.joins(e.u, e.v)) continue;  // e itself and its parallel mates
        if (f.u == e.v) f.u = e.u;
        if (f.v == e.v) f.v = e.u;
        es.push_back(f);
    }
    std::vector<VertexId> vs;
    for (VertexId v : h.vertices())
        if (v != e.v) vs.push_back(v);
    return SignedGraph(std::move(vs), std::move(es));
}

SignedGraph delete_edge(const SignedGraph& g, EdgeId id) {
    g.edge(id);
    std::vector<Edge> es;
    for (const Edge& f : g.edges())
        if (f.id != id) es.push_back(f);
    return SignedGraph(g.vertices(), std::move(es));
}

SignedGraph delete_vertex(const SignedGraph& g, VertexId v) {
    if (!g.has_vertex(v)) throw InputError(vertex_error(v));
    return delete_vertices(g, VertexSet{v});
}

SignedGraph delete_vertices(const SignedGraph& g, const VertexSet& gone) {
    std::vector<VertexId> vs;
    for (VertexId v : g.vertices())
        if (!gone.count(v)) vs.push_back(v);
    std::vector<Edge> es;
    for (const Edge& e : g.edges())
        if (!gone.count(e.u) && !gone.count(e.v)) es.push_back(e);
    return SignedGraph(std::move(vs), std::move(es));
}

SignedGraph induced_subgraph(const SignedGraph& g, const VertexSet& keep) {
    VertexSet gone;
    for (VertexId v : g.vertices())
        if (!keep.count(v)) gone.insert(v);
    for (VertexId v : keep)
        if (!g.has_vertex(v)) throw InputError(vertex_error(v));
    return delete_vertices(g, gone);
}

SignedGraph edge_subgraph(const SignedGraph& g, const std::vector<EdgeId>& ids) {
    VertexSet vs;
    std::vector<Edge> es;
    for (EdgeId id : ids) {
        const Edge& e = g.edge(id);
        es.push_back(e);
        vs.insert(e.u);
        vs.insert(e.v);
    }
    return SignedGraph(std::vector<VertexId>(vs.begin(), vs.end()), std::move(es));
}

SignedGraph drop_isolated_vertices(const SignedGraph& g) {
    VertexSet used;
    for (const Edge& e : g.edges()) {
        used.insert(e.u);
        used.insert(e.v);
    }
    return SignedGraph(std::vector<VertexId>(used.begin(), used.end()), g.edges());
}

// --- connectivity ----------------------------------------------------------------

std::vector<VertexSet> components(const SignedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : g.edges()) {
        std::size_t a = find(g.vertex_index(e.u)), b = find(g.vertex_index(e.v));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, VertexSet> by_root;
    for (std::size_t i = 0; i < n; ++i) by_root[find(i)].insert(g.vertices()[i]);
    std::vector<VertexSet> out;
    for (auto& [root, vs] : by_root) out.push_back(std::move(vs));
    return out;
}

bool is_connected(const SignedGraph& g) { return components(g).size() <= 1; }

namespace {

struct BlockDecomposition {
    std::vector<std::vector<EdgeId>> blocks;
    std::vector<bool> is_cut;  // by vertex index
};

// Hopcroft-Tarjan on the multigraph; parallel edges are told apart by edge position.
BlockDecomposition decompose_blocks(const SignedGraph& g) {
    const std::size_t n = g.vertex_count();
    const auto& es = g.edges();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbour, edge pos)
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::size_t a = g.vertex_index(es[i].u), b = g.vertex_index(es[i].v);
        adj[a].emplace_back(b, i);
        adj[b].emplace_back(a, i);
    }
    BlockDecomposition out;
    out.is_cut.assign(n, false);
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::size_t> edge_stack;
    int timer = 0;

    struct Frame {
        std::size_t v;
        std::size_t via;  // edge position used to enter v, or SIZE_MAX
        std::size_t next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        int root_children = 0;
        std::vector<Frame> stack{{root, SIZE_MAX, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            if (fr.next < adj[fr.v].size()) {
                auto [w, ei] = adj[fr.v][fr.next++];
                if (ei == fr.via) continue;
                if (disc[w] < 0) {
                    edge_stack.push_back(ei);
                    disc[w] = low[w] = timer++;
                    if (fr.v == root) ++root_children;
                    stack.push_back({w, ei, 0});
                } else if (disc[w] < disc[fr.v]) {
                    edge_stack.push_back(ei);
                    low[fr.v] = std::min(low[fr.v], disc[w]);
                }
            } else {
                Frame done = fr;
                stack.pop_back();
                if (stack.empty()) break;
                std::size_t p = stack.back().v;
                low[p] = std::min(low[p], low[done.v]);
                if (low[done.v] >= disc[p]) {
                    if (p != root) out.is_cut[p] = true;
                    std::vector<EdgeId> block;
                    while (!edge_stack.empty()) {
                        std::size_t top = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(es[top].id);
                        if (top == done.via) break;
                    }
                    std::sort(block.begin(), block.end());
                    out.blocks.push_back(std::move(block));
                }
            }
        }
        if (root_children > 1) out.is_cut[root] = true;
    }
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

} // namespace

std::vector<std::vector<EdgeId>> block_edge_sets(const SignedGraph& g) { return decompose_blocks(g).blocks; }

std::vector<SignedGraph> blocks(const SignedGraph& g) {
    std::vector<SignedGraph> out;
    for (const auto& b : block_edge_sets(g)) out.push_back(edge_subgraph(g, b));
    return out;
}

std::vector<VertexId> cut_vertices(const SignedGraph& g) {
    BlockDecomposition d = decompose_blocks(g);
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (d.is_cut[i]) out.push_back(g.vertices()[i]);
    return out;
}

bool is_two_connected(const SignedGraph& g) {
    return g.vertex_count() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

bool is_block(const SignedGraph& g) {
    if (g.edge_count() == 0) return g.vertex_count() <= 1;
    for (VertexId v : g.vertices())
        if (g.degree(v) == 0) return false;
    return block_edge_sets(g).size() == 1;
}

// --- canonical instances ---------------------------------------------------------

SignedGraph make_k2eq() { return SignedGraph::build(2, {{1, 2, Parity::even}, {1, 2, Parity::odd}}); }

SignedGraph make_k3eq() {
    return SignedGraph::build(3, {{1, 2, Parity::even},
                                  {1, 2, Parity::odd},
                                  {1, 3, Parity::even},
                                  {1, 3, Parity::odd},
                                  {2, 3, Parity::even},
                                  {2, 3, Parity::odd}});
}

SignedGraph make_k4odd() {
    std::vector<std::tuple<VertexId, VertexId, Parity>> es;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) es.emplace_back(a, b, Parity::odd);
    return SignedGraph::build(4, es);
}

SignedGraph make_double_prism() {
    return SignedGraph::build(6, {{1, 2, Parity::even},
                                  {2, 3, Parity::even},
                                  {1, 3, Parity::even},
                                  {4, 5, Parity::even},
                                  {5, 6, Parity::even},
                                  {4, 6, Parity::even},
                                  {1, 4, Parity::even},
                                  {1, 4, Parity::odd},
                                  {2, 5, Parity::even},
                                  {2, 5, Parity::odd},
                                  {3, 6, Parity::even},
                                  {3, 6, Parity::odd}});
}

std::string to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

std::string describe(const SignedGraph& g) {
    std::ostringstream os;
    os << "V={";
    for (std::size_t i = 0; i < g.vertex_count(); ++i) os << (i ? "," : "") << g.vertices()[i];
    os << "} E={";
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        os << (i ? " " : "") << e.id << ":" << e.u << (e.odd() ? "-" : "+") << e.v;
    }
    os << "}";
    return os.str();
}

} // namespace signu
