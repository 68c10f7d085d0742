#include "signu/classify.hpp"

#include "signu/errors.hpp"

#include <algorithm>

namespace signu {

namespace {

// Dart 2k leaves edges()[k].u, dart 2k+1 leaves edges()[k].v.
struct Darts {
    const SignedGraph& g;
    explicit Darts(const SignedGraph& graph) : g(graph) {}
    const Edge& edge(int d) const { return g.edges()[static_cast<std::size_t>(d / 2)]; }
    VertexId tail(int d) const { return d % 2 ? edge(d).v : edge(d).u; }
    VertexId head(int d) const { return d % 2 ? edge(d).u : edge(d).v; }
    static int twin(int d) { return d ^ 1; }
};

using DartRotation = std::vector<std::vector<int>>;  // by vertex index

struct Traced {
    std::vector<std::vector<int>> faces;  // dart sequences
    std::vector<int> face_of;             // by dart
    int odd = 0;
};

Traced trace(const Darts& dz, const DartRotation& rot) {
    const SignedGraph& g = dz.g;
    const int nd = static_cast<int>(2 * g.edge_count());
    std::vector<int> pos(static_cast<std::size_t>(nd), -1);
    for (const auto& r : rot)
        for (std::size_t i = 0; i < r.size(); ++i) pos[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
    Traced t;
    t.face_of.assign(static_cast<std::size_t>(nd), -1);
    for (int start = 0; start < nd; ++start) {
        if (pos[static_cast<std::size_t>(start)] < 0 || t.face_of[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = static_cast<int>(t.faces.size());
        std::vector<int> face;
        int odd = 0;
        int d = start;
        do {
            t.face_of[static_cast<std::size_t>(d)] = id;
            face.push_back(d);
            odd ^= dz.edge(d).odd() ? 1 : 0;
            const int back = Darts::twin(d);
            const auto& r = rot[g.vertex_index(dz.head(d))];
            d = r[static_cast<std::size_t>((pos[static_cast<std::size_t>(back)] + 1) % static_cast<int>(r.size()))];
        } while (d != start);
        t.odd += odd;
        t.faces.push_back(std::move(face));
    }
    return t;
}

Walk dart_walk(const Darts& dz, const std::vector<int>& face) {
    Walk w;
    w.vertices.push_back(dz.tail(face.front()));
    for (int d : face) {
        w.edges.push_back(dz.edge(d).id);
        w.vertices.push_back(dz.head(d));
    }
    return w;
}

/// Enumerates embeddings of one connected graph.
class ComponentEnumerator {
public:
    ComponentEnumerator(const SignedGraph& g, int max_odd, std::function<bool(const PlaneEmbedding&)> visit)
        : g_(g), dz_(g), max_odd_(max_odd), visit_(std::move(visit)), rot_(g.vertex_count()) {}

    bool run() {
        if (g_.edge_count() == 0) {
            PlaneEmbedding emb;
            for (VertexId v : g_.vertices()) {
                emb.rotation[v] = {};
                emb.faces.push_back(Walk{{v}, {}});
            }
            return visit_(emb);
        }
        plan();
        const int first = order_.front();
        rot_[g_.vertex_index(g_.edges()[static_cast<std::size_t>(first)].u)].push_back(2 * first);
        rot_[g_.vertex_index(g_.edges()[static_cast<std::size_t>(first)].v)].push_back(2 * first + 1);
        return step(1);
    }

private:
    void plan() {
        const std::size_t m = g_.edge_count();
        std::vector<bool> placed(m, false), seen(g_.vertex_count(), false);
        auto place = [&](std::size_t k) {
            placed[k] = true;
            order_.push_back(static_cast<int>(k));
            seen[g_.vertex_index(g_.edges()[k].u)] = true;
            seen[g_.vertex_index(g_.edges()[k].v)] = true;
        };
        place(0);
        while (order_.size() < m) {
            std::optional<std::size_t> closing;
            for (std::size_t k = 0; k < m && !closing; ++k) {
                const Edge& e = g_.edges()[k];
                if (!placed[k] && seen[g_.vertex_index(e.u)] && seen[g_.vertex_index(e.v)]) closing = k;
            }
            if (closing) {
                place(*closing);
                continue;
            }
            // Grow towards the unseen vertex with the most edges into the placed part.
            std::map<std::size_t, std::pair<int, std::size_t>> cand;  // vertex index -> (count, first edge)
            for (std::size_t k = 0; k < m; ++k) {
                if (placed[k]) continue;
                const Edge& e = g_.edges()[k];
                std::size_t a = g_.vertex_index(e.u), b = g_.vertex_index(e.v);
                if (seen[a] == seen[b]) continue;
                std::size_t fresh = seen[a] ? b : a;
                auto it = cand.find(fresh);
                if (it == cand.end()) cand[fresh] = {1, k};
                else ++it->second.first;
            }
            if (cand.empty()) throw InternalError("embedding: component is not connected");
            auto best = cand.begin();
            for (auto it = cand.begin(); it != cand.end(); ++it)
                if (it->second.first > best->second.first) best = it;
            place(best->second.second);
        }
    }

    bool emit() {
        Traced t = trace(dz_, rot_);
        PlaneEmbedding emb;
        for (std::size_t i = 0; i < rot_.size(); ++i) {
            auto& r = emb.rotation[g_.vertices()[i]];
            for (int d : rot_[i]) r.push_back(dz_.edge(d).id);
        }
        for (const auto& f : t.faces) emb.faces.push_back(dart_walk(dz_, f));
        emb.odd_faces = t.odd;
        return visit_(emb);
    }

    bool step(std::size_t k) {
        if (k == order_.size()) return emit();
        const int e = order_[k];
        const Edge& edge = g_.edges()[static_cast<std::size_t>(e)];
        auto& ru = rot_[g_.vertex_index(edge.u)];
        auto& rv = rot_[g_.vertex_index(edge.v)];
        if (ru.empty() || rv.empty()) {
            // Pendant edge: any corner of the placed end; face parities do not change.
            const bool u_new = ru.empty();
            auto& anchor = u_new ? rv : ru;
            auto& fresh = u_new ? ru : rv;
            const int d_anchor = u_new ? 2 * e + 1 : 2 * e;
            const int d_fresh = u_new ? 2 * e : 2 * e + 1;
            fresh.push_back(d_fresh);
            const std::size_t deg = anchor.size();
            for (std::size_t i = 0; i < deg; ++i) {
                anchor.insert(anchor.begin() + static_cast<std::ptrdiff_t>(i + 1), d_anchor);
                bool go = step(k + 1);
                anchor.erase(anchor.begin() + static_cast<std::ptrdiff_t>(i + 1));
                if (!go) {
                    fresh.clear();
                    return false;
                }
            }
            fresh.clear();
            return true;
        }
        // Both ends placed: the new edge must split a face through a corner at each end.
        Traced t = trace(dz_, rot_);
        const std::size_t du = ru.size(), dv = rv.size();
        for (std::size_t i = 0; i < du; ++i) {
            const int fu = t.face_of[static_cast<std::size_t>(ru[(i + 1) % du])];
            for (std::size_t j = 0; j < dv; ++j) {
                const int fv = t.face_of[static_cast<std::size_t>(rv[(j + 1) % dv])];
                if (fu != fv) continue;
                ru.insert(ru.begin() + static_cast<std::ptrdiff_t>(i + 1), 2 * e);
                rv.insert(rv.begin() + static_cast<std::ptrdiff_t>(j + 1), 2 * e + 1);
                bool go = true;
                if (max_odd_ < 0 || trace(dz_, rot_).odd <= max_odd_) go = step(k + 1);
                ru.erase(ru.begin() + static_cast<std::ptrdiff_t>(i + 1));
                rv.erase(rv.begin() + static_cast<std::ptrdiff_t>(j + 1));
                if (!go) return false;
            }
        }
        return true;
    }

    const SignedGraph& g_;
    Darts dz_;
    int max_odd_;
    std::function<bool(const PlaneEmbedding&)> visit_;
    DartRotation rot_;
    std::vector<int> order_;
};

std::vector<SignedGraph> component_graphs(const SignedGraph& g) {
    std::vector<SignedGraph> out;
    for (const VertexSet& c : components(g)) out.push_back(induced_subgraph(g, c));
    return out;
}

PlaneEmbedding merge(const std::vector<PlaneEmbedding>& parts) {
    PlaneEmbedding out;
    out.components = static_cast<int>(parts.size());
    for (const auto& p : parts) {
        for (const auto& [v, r] : p.rotation) out.rotation[v] = r;
        out.faces.insert(out.faces.end(), p.faces.begin(), p.faces.end());
        out.odd_faces += p.odd_faces;
    }
    return out;
}

void check_capacity(const SignedGraph& g) {
    if (g.edge_count() > kDeskEdgeCap) {
        throw CapacityError("embedding enumeration is limited to " + std::to_string(kDeskEdgeCap) + " edges (got " +
                            std::to_string(g.edge_count()) + ")");
    }
}

/// Rotation of a face walk's (tail, edge) sequence to its smallest starting point.
std::vector<std::pair<VertexId, EdgeId>> canonical_face(const Walk& w) {
    std::vector<std::pair<VertexId, EdgeId>> seq;
    for (std::size_t i = 0; i < w.edges.size(); ++i) seq.emplace_back(w.vertices[i], w.edges[i]);
    if (seq.empty()) {
        seq.emplace_back(w.vertices.empty() ? 0 : w.vertices.front(), -1);
        return seq;
    }
    auto best = seq;
    for (std::size_t s = 1; s < seq.size(); ++s) {
        std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        best = std::min(best, seq);
    }
    return best;
}

} // namespace

std::vector<Walk> trace_faces(const SignedGraph& g, const std::map<VertexId, std::vector<EdgeId>>& rotation) {
    Darts dz(g);
    DartRotation rot(g.vertex_count());
    std::vector<int> uses(2 * g.edge_count(), 0);
    for (const auto& [v, r] : rotation) {
        if (!g.has_vertex(v)) throw InputError("rotation names unknown vertex " + std::to_string(v));
        auto& out = rot[g.vertex_index(v)];
        for (EdgeId id : r) {
            const Edge& e = g.edge(id);
            if (!e.incident(v)) throw InputError("rotation at " + std::to_string(v) + " lists non-incident edge " + std::to_string(id));
            std::size_t k = static_cast<std::size_t>(std::lower_bound(g.edges().begin(), g.edges().end(), id,
                                                                      [](const Edge& a, EdgeId b) { return a.id < b; }) -
                                                     g.edges().begin());
            int d = static_cast<int>(2 * k) + (e.u == v ? 0 : 1);
            ++uses[static_cast<std::size_t>(d)];
            out.push_back(d);
        }
    }
    for (int u : uses)
        if (u != 1) throw InputError("rotation must list every edge end exactly once");
    std::vector<Walk> faces;
    for (const auto& f : trace(dz, rot).faces) faces.push_back(dart_walk(dz, f));
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (rot[i].empty()) faces.push_back(Walk{{g.vertices()[i]}, {}});
    return faces;
}

void for_each_planar_embedding(const SignedGraph& g, const std::function<bool(const PlaneEmbedding&)>& visit, int max_odd_faces) {
    check_capacity(g);
    const auto comps = component_graphs(g);
    if (comps.empty()) {
        PlaneEmbedding emb;
        emb.components = 0;
        visit(emb);
        return;
    }
    std::vector<PlaneEmbedding> chosen;
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int budget) -> bool {
        if (i == comps.size()) return visit(merge(chosen));
        ComponentEnumerator en(comps[i], budget, [&](const PlaneEmbedding& emb) {
            if (budget >= 0 && emb.odd_faces > budget) return true;
            chosen.push_back(emb);
            bool go = rec(i + 1, budget < 0 ? -1 : budget - emb.odd_faces);
            chosen.pop_back();
            return go;
        });
        return en.run();
    };
    rec(0, max_odd_faces);
}

std::vector<PlaneEmbedding> planar_embeddings(const SignedGraph& g) {
    std::vector<PlaneEmbedding> out;
    for_each_planar_embedding(g, [&](const PlaneEmbedding& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

bool is_planar(const SignedGraph& g) {
    bool found = false;
    for_each_planar_embedding(g, [&](const PlaneEmbedding&) {
        found = true;
        return false;
    });
    return found;
}

bool validate_embedding(const SignedGraph& g, const PlaneEmbedding& emb) {
    if (emb.rotation.size() != g.vertex_count()) return false;
    for (const auto& [v, r] : emb.rotation) {
        if (!g.has_vertex(v)) return false;
        auto a = r, b = g.incident_edges(v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    std::vector<Walk> traced;
    try {
        traced = trace_faces(g, emb.rotation);
    } catch (const InputError&) {
        return false;
    }
    auto canon = [](const std::vector<Walk>& fs) {
        std::vector<std::vector<std::pair<VertexId, EdgeId>>> out;
        for (const Walk& w : fs) out.push_back(canonical_face(w));
        std::sort(out.begin(), out.end());
        return out;
    };
    if (canon(traced) != canon(emb.faces)) return false;

    const auto comps = components(g);
    if (static_cast<int>(comps.size()) != emb.components && !(comps.empty() && emb.components == 0)) return false;
    for (const VertexSet& c : comps) {
        long edges = 0, faces = 0;
        for (const Edge& e : g.edges()) edges += c.count(e.u) ? 1 : 0;
        for (const Walk& w : traced) faces += c.count(w.vertices.front()) ? 1 : 0;
        if (static_cast<long>(c.size()) - edges + faces != 2) return false;
    }
    int odd = 0;
    for (const Walk& w : traced) odd += walk_parity(g, w) == Parity::odd ? 1 : 0;
    return odd == emb.odd_faces;
}

std::optional<PlaneEmbedding> two_odd_faces(const SignedGraph& g) {
    check_capacity(g);
    auto first_with = [](const SignedGraph& h, int bound) {
        std::optional<PlaneEmbedding> out;
        for_each_planar_embedding(
            h,
            [&](const PlaneEmbedding& e) {
                out = e;
                return false;
            },
            bound);
        return out;
    };
    const auto comps = component_graphs(g);
    if (comps.size() <= 1) return first_with(g, 2);
    std::vector<PlaneEmbedding> parts;
    int odd = 0;
    for (const SignedGraph& c : comps) {
        auto e = first_with(c, 0);
        if (!e) e = first_with(c, 2);
        if (!e) return std::nullopt;
        odd += e->odd_faces;
        if (odd > 2) return std::nullopt;
        parts.push_back(std::move(*e));
    }
    return merge(parts);
}

} // namespace signu
