#pragma once

// Independent reference implementations used only by the tests. They stay
// deliberately naive: exhaustive enumeration over small instances.

#include "signu/signed_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <random>
#include <vector>

namespace oracle {

using signu::Edge;
using signu::EdgeId;
using signu::Parity;
using signu::SignedGraph;
using signu::VertexId;

/// Every cycle of g (including 2-cycles of parallel edges), each reported once as
/// an edge-id set with its parity.
struct Cycle {
    std::vector<EdgeId> edges;  // sorted
    int odd_count = 0;
};

inline std::vector<Cycle> all_cycles(const SignedGraph& g) {
    std::map<std::vector<EdgeId>, Cycle> found;
    const auto& es = g.edges();
    std::vector<VertexId> path;
    std::vector<EdgeId> used;
    std::vector<bool> on_path_edge(es.size(), false);
    // Start a cycle at every vertex, walk simple paths, close back at the start.
    for (VertexId s : g.vertices()) {
        std::vector<VertexId> visited{s};
        std::vector<std::size_t> epos;
        auto rec = [&](auto&& self, VertexId at) -> void {
            for (std::size_t i = 0; i < es.size(); ++i) {
                const Edge& e = es[i];
                if (!e.incident(at) || on_path_edge[i]) continue;
                VertexId nxt = e.other(at);
                if (nxt == s && !epos.empty()) {
                    std::vector<EdgeId> ids;
                    int odd = e.odd() ? 1 : 0;
                    ids.push_back(e.id);
                    for (std::size_t p : epos) {
                        ids.push_back(es[p].id);
                        odd += es[p].odd() ? 1 : 0;
                    }
                    std::sort(ids.begin(), ids.end());
                    found[ids] = Cycle{ids, odd};
                    continue;
                }
                if (std::find(visited.begin(), visited.end(), nxt) != visited.end()) continue;
                visited.push_back(nxt);
                epos.push_back(i);
                on_path_edge[i] = true;
                self(self, nxt);
                on_path_edge[i] = false;
                epos.pop_back();
                visited.pop_back();
            }
        };
        rec(rec, s);
    }
    std::vector<Cycle> out;
    for (auto& [k, c] : found) out.push_back(c);
    return out;
}

inline bool connected_without(const SignedGraph& g, VertexId removed) {
    std::vector<VertexId> vs;
    for (VertexId v : g.vertices())
        if (v != removed) vs.push_back(v);
    if (vs.empty()) return true;
    std::vector<VertexId> seen{vs.front()}, stack{vs.front()};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const Edge& e : g.edges()) {
            if (!e.incident(x) || e.incident(removed)) continue;
            VertexId y = e.other(x);
            if (std::find(seen.begin(), seen.end(), y) == seen.end()) {
                seen.push_back(y);
                stack.push_back(y);
            }
        }
    }
    return seen.size() == vs.size();
}

/// Connected after deleting any single vertex, and at least 3 vertices.
inline bool two_connected(const SignedGraph& g) {
    if (g.vertex_count() < 3) return false;
    if (!connected_without(g, 0)) return false;
    for (VertexId v : g.vertices())
        if (!connected_without(g, v)) return false;
    return true;
}

inline SignedGraph random_graph(std::mt19937_64& rng, int n, int m) {
    std::vector<std::tuple<VertexId, VertexId, Parity>> es;
    std::uniform_int_distribution<int> pick(1, n);
    std::bernoulli_distribution coin(0.5);
    while (static_cast<int>(es.size()) < m && n >= 2) {
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        es.emplace_back(a, b, coin(rng) ? Parity::odd : Parity::even);
    }
    return SignedGraph::build(n, es);
}

/// Exhaustive odd-cycle test: the signed graph is bipartite iff no cycle is odd.
inline bool bipartite_by_cycles(const SignedGraph& g) {
    for (const auto& c : all_cycles(g))
        if (c.odd_count % 2) return false;
    return true;
}

} // namespace oracle

namespace oracle {

using Rotation = std::map<VertexId, std::vector<EdgeId>>;

/// Number of faces of a rotation system (edge ids are unique at each vertex since there are no loops).
inline int count_faces(const SignedGraph& g, const Rotation& rot, int* odd_faces = nullptr) {
    std::set<std::pair<EdgeId, VertexId>> done;  // (edge, tail)
    int faces = 0, odd = 0;
    for (const Edge& e0 : g.edges())
        for (VertexId t0 : {e0.u, e0.v}) {
            if (done.count({e0.id, t0})) continue;
            ++faces;
            int parity = 0;
            EdgeId e = e0.id;
            VertexId t = t0;
            while (!done.count({e, t})) {
                done.insert({e, t});
                parity ^= g.edge(e).odd() ? 1 : 0;
                VertexId h = g.edge(e).other(t);
                const auto& r = rot.at(h);
                auto it = std::find(r.begin(), r.end(), e);
                ++it;
                if (it == r.end()) it = r.begin();
                e = *it;
                t = h;
            }
            odd += parity;
        }
    for (VertexId v : g.vertices())
        if (g.degree(v) == 0) ++faces;
    if (odd_faces) *odd_faces = odd;
    return faces;
}

inline Rotation normalise(Rotation r) {
    for (auto& [v, seq] : r)
        if (!seq.empty()) std::rotate(seq.begin(), std::min_element(seq.begin(), seq.end()), seq.end());
    return r;
}

/// All genus-0 rotation systems by trying every cyclic order at every vertex.
inline std::vector<std::pair<Rotation, int>> brute_force_embeddings(const SignedGraph& g) {
    std::vector<std::pair<Rotation, int>> out;
    std::vector<VertexId> vs = g.vertices();
    const long comps = static_cast<long>(signu::components(g).size());
    Rotation rot;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == vs.size()) {
            int odd = 0;
            long f = count_faces(g, rot, &odd);
            long v = static_cast<long>(g.vertex_count()), e = static_cast<long>(g.edge_count());
            if (v - e + f == 2 * comps) out.emplace_back(rot, odd);
            return;
        }
        std::vector<EdgeId> inc = g.incident_edges(vs[i]);
        std::sort(inc.begin(), inc.end());
        if (inc.size() <= 1) {
            rot[vs[i]] = inc;
            self(self, i + 1);
            return;
        }
        // Fix the first element; permute the rest to get each cyclic order once.
        std::vector<EdgeId> tail(inc.begin() + 1, inc.end());
        do {
            std::vector<EdgeId> seq{inc.front()};
            seq.insert(seq.end(), tail.begin(), tail.end());
            rot[vs[i]] = seq;
            self(self, i + 1);
        } while (std::next_permutation(tail.begin(), tail.end()));
    };
    rec(rec, 0);
    return out;
}

} // namespace oracle
