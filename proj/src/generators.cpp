#include "signu/generators.hpp"

#include "signu/errors.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <unordered_set>

namespace signu {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng) { return uniform(rng, 0, 1) == 1; }
Parity random_parity(std::mt19937_64& rng) { return coin(rng) ? Parity::odd : Parity::even; }
Parity by_potential(const std::map<VertexId, int>& pot, VertexId a, VertexId b) {
    return (pot.at(a) ^ pot.at(b)) ? Parity::odd : Parity::even;
}

// Entry sign of S(G) for a single-parity pair: -1 even, +1 odd.
double sigma(Parity p) { return p == Parity::odd ? 1.0 : -1.0; }

std::vector<VertexId> iota_ids(VertexId first, int count) {
    std::vector<VertexId> out;
    for (int i = 0; i < count; ++i) out.push_back(first + i);
    return out;
}

void enumerate_multisets(int types, int budget, int first, std::vector<int>& counts, const std::function<void()>& visit) {
    visit();
    if (budget == 0) return;
    for (int t = first; t < types; ++t) {
        ++counts[static_cast<std::size_t>(t)];
        enumerate_multisets(types, budget - 1, t, counts, visit);
        --counts[static_cast<std::size_t>(t)];
    }
}

} // namespace

SignedGraph random_signed_graph(std::mt19937_64& rng, int max_vertices, int max_edges) {
    if (max_vertices < 1) throw InputError("random_signed_graph needs at least one vertex");
    const int n = uniform(rng, 1, max_vertices);
    const int m = n < 2 ? 0 : uniform(rng, 0, max_edges);
    std::vector<std::tuple<VertexId, VertexId, Parity>> es;
    for (int i = 0; i < m; ++i) {
        VertexId a = uniform(rng, 1, n), b = uniform(rng, 1, n - 1);
        if (b >= a) ++b;
        es.emplace_back(a, b, random_parity(rng));
    }
    return SignedGraph::build(n, es);
}

std::vector<SignedGraph> exhaustive_corpus(int max_vertices, int max_edges) {
    std::vector<SignedGraph> out;
    std::unordered_set<std::string> seen;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::tuple<VertexId, VertexId, Parity>> types;
        for (VertexId a = 1; a <= n; ++a)
            for (VertexId b = a + 1; b <= n; ++b)
                for (Parity p : {Parity::even, Parity::odd}) types.emplace_back(a, b, p);
        std::vector<int> counts(types.size(), 0);
        enumerate_multisets(static_cast<int>(types.size()), max_edges, 0, counts, [&] {
            std::vector<std::tuple<VertexId, VertexId, Parity>> es;
            for (std::size_t t = 0; t < types.size(); ++t)
                for (int k = 0; k < counts[t]; ++k) es.push_back(types[t]);
            SignedGraph g = SignedGraph::build(n, es);
            if (seen.insert(canonical_key(g)).second) out.push_back(std::move(g));
        });
    }
    return out;
}

PlaneBlock random_plane_block(std::mt19937_64& rng, int max_edges) {
    if (max_edges < 3) throw InputError("a plane block with two odd faces needs at least 3 edges");
    // A face is a cyclic list of (vertex, edge leaving it along the boundary).
    using Face = std::vector<std::pair<VertexId, EdgeId>>;
    std::vector<Edge> edges;
    std::vector<Face> faces(2);
    const int target = uniform(rng, 3, max_edges);
    const int k = uniform(rng, 2, std::min(5, target));
    VertexId next_v = 1;
    for (int i = 0; i < k; ++i) {
        VertexId a = next_v + i, b = next_v + (i + 1) % k;
        edges.push_back(Edge{static_cast<EdgeId>(i), a, b, Parity::even});
        faces[0].emplace_back(a, static_cast<EdgeId>(i));
    }
    for (int i = k - 1; i >= 0; --i) faces[1].emplace_back(next_v + (i + 1) % k, static_cast<EdgeId>(i));
    next_v += k;

    while (static_cast<int>(edges.size()) < target) {
        const int room = target - static_cast<int>(edges.size());
        const std::size_t fi = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(faces.size()) - 1));
        Face f = faces[fi];
        const int len = static_cast<int>(f.size());
        const int i = uniform(rng, 0, len - 1);
        const int j = (i + uniform(rng, 1, len - 1)) % len;
        std::rotate(f.begin(), f.begin() + i, f.end());
        const int jj = (j - i + len) % len;
        const int ear = uniform(rng, 1, std::min(3, room));
        std::vector<VertexId> path{f[0].first};
        for (int t = 1; t < ear; ++t) path.push_back(next_v++);
        path.push_back(f[static_cast<std::size_t>(jj)].first);
        std::vector<EdgeId> ids;
        for (int t = 0; t < ear; ++t) {
            ids.push_back(static_cast<EdgeId>(edges.size()));
            edges.push_back(Edge{ids.back(), path[static_cast<std::size_t>(t)], path[static_cast<std::size_t>(t) + 1], Parity::even});
        }
        Face one(f.begin(), f.begin() + jj), two(f.begin() + jj, f.end());
        for (int t = ear; t >= 1; --t) one.emplace_back(path[static_cast<std::size_t>(t)], ids[static_cast<std::size_t>(t) - 1]);
        for (int t = 0; t < ear; ++t) two.emplace_back(path[static_cast<std::size_t>(t)], ids[static_cast<std::size_t>(t)]);
        faces[fi] = std::move(one);
        faces.push_back(std::move(two));
    }

    // Dual BFS between two distinct faces.
    std::map<EdgeId, std::vector<std::size_t>> sides;
    for (std::size_t fi = 0; fi < faces.size(); ++fi)
        for (auto [v, e] : faces[fi]) sides[e].push_back(fi);
    PlaneBlock out;
    out.odd_a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(faces.size()) - 1));
    out.odd_b = (out.odd_a + static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(faces.size()) - 1))) % faces.size();
    std::vector<std::pair<std::size_t, EdgeId>> via(faces.size(), {faces.size(), 0});
    std::queue<std::size_t> q;
    q.push(out.odd_a);
    via[out.odd_a] = {out.odd_a, 0};
    while (!q.empty()) {
        std::size_t x = q.front();
        q.pop();
        for (auto [v, e] : faces[x])
            for (std::size_t y : sides[e])
                if (via[y].first == faces.size()) {
                    via[y] = {x, e};
                    q.push(y);
                }
    }
    for (std::size_t x = out.odd_b; x != out.odd_a; x = via[x].first) edges[via[x].second].parity = flip(edges[via[x].second].parity);

    std::vector<VertexId> vs = iota_ids(1, next_v - 1);
    SignedGraph g(vs, edges);
    VertexSet u;
    for (VertexId v : vs)
        if (coin(rng)) u.insert(v);
    out.graph = resign(g, u);
    for (const Face& f : faces) {
        Walk w;
        for (auto [v, e] : f) {
            w.vertices.push_back(v);
            w.edges.push_back(e);
        }
        w.vertices.push_back(f.front().first);
        out.faces.push_back(std::move(w));
    }
    return out;
}

CliqueSetup random_clique_setup(std::mt19937_64& rng) {
    const int ns = uniform(rng, 2, 3), nc = uniform(rng, 1, 3), nd = uniform(rng, 0, 2);
    CliqueSetup out;
    out.s = iota_ids(1, ns);
    const auto cs = iota_ids(1 + ns, nc);
    const auto ds = iota_ids(1 + ns + nc, nd);
    out.c = VertexSet(cs.begin(), cs.end());
    for (VertexId v : out.s) out.potential[v] = uniform(rng, 0, 1);
    for (VertexId v : cs) out.potential[v] = uniform(rng, 0, 1);

    std::vector<std::tuple<VertexId, VertexId, Parity>> g1, g2;
    auto g2_edge = [&](VertexId a, VertexId b) { g2.emplace_back(a, b, by_potential(out.potential, a, b)); };
    for (std::size_t i = 1; i < cs.size(); ++i) g2_edge(cs[i], cs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(i) - 1))]);
    for (VertexId v : out.s) g2_edge(v, cs[static_cast<std::size_t>(uniform(rng, 0, nc - 1))]);
    std::vector<VertexId> side2 = out.s;
    side2.insert(side2.end(), cs.begin(), cs.end());
    for (int extra = uniform(rng, 0, 2); extra > 0; --extra) {
        VertexId a = side2[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(side2.size()) - 1))];
        VertexId b = side2[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(side2.size()) - 1))];
        if (a != b) g2_edge(a, b);
    }

    std::vector<VertexId> side1 = out.s;
    side1.insert(side1.end(), ds.begin(), ds.end());
    auto pick1 = [&] { return side1[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(side1.size()) - 1))]; };
    for (VertexId d : ds) {
        VertexId b = pick1();
        while (b == d) b = pick1();
        g1.emplace_back(d, b, random_parity(rng));
    }
    for (int extra = uniform(rng, 0, 3); extra > 0; --extra) {
        VertexId a = pick1(), b = pick1();
        if (a != b) g1.emplace_back(a, b, random_parity(rng));
    }

    auto all = g1;
    all.insert(all.end(), g2.begin(), g2.end());
    out.g = SignedGraph::build(ns + nc + nd, all);

    std::vector<Edge> h_edges;
    EdgeId id = 0;
    for (auto [a, b, p] : g1) h_edges.push_back(Edge{id++, a, b, p});
    for (std::size_t i = 0; i < out.s.size(); ++i)
        for (std::size_t j = i + 1; j < out.s.size(); ++j)
            h_edges.push_back(Edge{id++, out.s[i], out.s[j], by_potential(out.potential, out.s[i], out.s[j])});
    std::sort(side1.begin(), side1.end());
    out.h = SignedGraph(side1, h_edges);
    return out;
}

SeparatorSetup random_separator_setup(std::mt19937_64& rng) {
    SeparatorSetup out;
    const int ns = uniform(rng, 1, 2), m = uniform(rng, 2, 3);
    out.separator = iota_ids(1, ns);
    VertexId next = 1 + ns;
    std::vector<std::tuple<VertexId, VertexId, Parity>> es;
    for (VertexId s : out.separator) out.potential[s] = 0;
    for (int i = 0; i < m; ++i) {
        const auto comp = iota_ids(next, uniform(rng, 2, 3));
        next += static_cast<VertexId>(comp.size());
        out.components.emplace_back(comp.begin(), comp.end());
        for (VertexId v : comp) out.potential[v] = uniform(rng, 0, 1);
        auto pick = [&] { return comp[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(comp.size()) - 1))]; };
        for (std::size_t k = 1; k < comp.size(); ++k) {
            VertexId b = comp[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(k) - 1))];
            es.emplace_back(comp[k], b, by_potential(out.potential, comp[k], b));
        }
        if (comp.size() == 3 && coin(rng)) es.emplace_back(comp[0], comp[2], by_potential(out.potential, comp[0], comp[2]));
        for (VertexId s : out.separator) {
            VertexId a = pick(), b = pick();
            while (b == a) b = pick();
            // Choose the second parity so the cycle s-a...b-s is odd.
            Parity pa = random_parity(rng);
            Parity pb = flip(pa ^ by_potential(out.potential, a, b));
            es.emplace_back(s, a, pa);
            es.emplace_back(s, b, pb);
        }
    }
    if (ns == 2 && coin(rng)) es.emplace_back(1, 2, random_parity(rng));
    out.g = SignedGraph::build(next - 1, es);
    return out;
}

PatternMatrix planted_separator_matrix(const SeparatorSetup& setup, const std::vector<bool>& singular, std::mt19937_64& rng) {
    if (singular.size() != setup.components.size()) throw InputError("one flag per component is required");
    const SignedGraph& g = setup.g;
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    auto idx = [&](VertexId v) { return static_cast<Eigen::Index>(g.vertex_index(v)); };
    VertexSet sep(setup.separator.begin(), setup.separator.end());

    // Component blocks: weighted signed Laplacians, whose kernel is the potential sign vector.
    for (const Edge& e : g.edges()) {
        if (sep.count(e.u) || sep.count(e.v)) continue;
        const double w = uniform_real(rng, 0.5, 2.0);
        const Eigen::Index i = idx(e.u), j = idx(e.v);
        a(i, i) += w;
        a(j, j) += w;
        a(i, j) += sigma(e.parity) * w;
        a(j, i) += sigma(e.parity) * w;
    }
    for (std::size_t k = 0; k < setup.components.size(); ++k)
        if (!singular[k])
            for (VertexId v : setup.components[k]) a(idx(v), idx(v)) += uniform_real(rng, 0.1, 1.0);

    // Separator rows: the two edges into a component share one magnitude, so they cancel on its kernel.
    for (VertexId s : setup.separator)
        for (const VertexSet& comp : setup.components) {
            const double w = uniform_real(rng, 0.5, 2.0);
            for (EdgeId id : g.incident_edges(s)) {
                const Edge& e = g.edge(id);
                if (!comp.count(e.other(s))) continue;
                a(idx(s), idx(e.other(s))) = sigma(e.parity) * w;
                a(idx(e.other(s)), idx(s)) = sigma(e.parity) * w;
            }
        }
    for (std::size_t i = 0; i < setup.separator.size(); ++i)
        for (std::size_t j = i + 1; j < setup.separator.size(); ++j) {
            const VertexId x = setup.separator[i], y = setup.separator[j];
            auto between = g.edges_between(x, y);
            if (between.empty()) continue;
            std::set<Parity> ps;
            for (EdgeId id : between) ps.insert(g.edge(id).parity);
            const double w = uniform_real(rng, 0.5, 2.0);
            const double v = ps.size() == 2 ? uniform_real(rng, -1.0, 1.0) : sigma(*ps.begin()) * w;
            a(idx(x), idx(y)) = v;
            a(idx(y), idx(x)) = v;
        }

    // Lift the separator diagonal until the Schur complement onto it is PSD.
    std::vector<Eigen::Index> s_idx, c_idx;
    for (VertexId v : g.vertices()) (sep.count(v) ? s_idx : c_idx).push_back(idx(v));
    const auto ns = static_cast<Eigen::Index>(s_idx.size()), nc = static_cast<Eigen::Index>(c_idx.size());
    Eigen::MatrixXd ass(ns, ns), asc(ns, nc), acc(nc, nc);
    for (Eigen::Index i = 0; i < ns; ++i) {
        for (Eigen::Index j = 0; j < ns; ++j) ass(i, j) = a(s_idx[i], s_idx[j]);
        for (Eigen::Index j = 0; j < nc; ++j) asc(i, j) = a(s_idx[i], c_idx[j]);
    }
    for (Eigen::Index i = 0; i < nc; ++i)
        for (Eigen::Index j = 0; j < nc; ++j) acc(i, j) = a(c_idx[i], c_idx[j]);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(acc);
    cod.setThreshold(1e-10);
    Eigen::MatrixXd schur = ass - asc * cod.pseudoInverse() * asc.transpose();
    schur = 0.5 * (schur + schur.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(schur).eigenvalues()(0);
    const double margin = coin(rng) ? 0.0 : uniform_real(rng, 0.1, 1.0);
    for (Eigen::Index i : s_idx) a(i, i) += margin - lmin;
    return PatternMatrix(g, a);
}

SignedGraph random_almost_bipartite_block(std::mt19937_64& rng, int max_base_vertices) {
    const int k = uniform(rng, 3, std::max(3, max_base_vertices));
    std::map<VertexId, int> pot;
    for (VertexId v = 1; v <= k; ++v) pot[v] = uniform(rng, 0, 1);
    std::vector<std::tuple<VertexId, VertexId, Parity>> es;
    for (VertexId v = 1; v <= k; ++v) {
        VertexId w = v % k + 1;
        es.emplace_back(v, w, by_potential(pot, v, w));
    }
    for (int extra = uniform(rng, 0, k - 1); extra > 0; --extra) {
        VertexId a = uniform(rng, 1, k), b = uniform(rng, 1, k);
        if (a != b) es.emplace_back(a, b, by_potential(pot, a, b));
    }
    const VertexId hub = k + 1;
    std::vector<VertexId> base = iota_ids(1, k);
    std::shuffle(base.begin(), base.end(), rng);
    const int r = uniform(rng, 2, k);
    for (int i = 0; i < r; ++i) es.emplace_back(hub, base[static_cast<std::size_t>(i)], random_parity(rng));
    SignedGraph g = SignedGraph::build(k + 1, es);
    if (is_bipartite(g)) {
        auto& last = es.back();
        std::get<2>(last) = flip(std::get<2>(last));
        g = SignedGraph::build(k + 1, es);
    }
    return g;
}

} // namespace signu
