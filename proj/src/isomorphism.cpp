#include "signu/signed_graph.hpp"

#include "signu/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

namespace signu {

namespace {

/// Per-pair (even count, odd count) table indexed by vertex position.
struct PairCounts {
    std::size_t n = 0;
    std::vector<int> even;
    std::vector<int> odd;

    explicit PairCounts(const SignedGraph& g) : n(g.vertex_count()), even(n * n, 0), odd(n * n, 0) {
        for (const Edge& e : g.edges()) {
            std::size_t a = g.vertex_index(e.u), b = g.vertex_index(e.v);
            auto& t = e.odd() ? odd : even;
            ++t[a * n + b];
            ++t[b * n + a];
        }
    }
    int ev(std::size_t a, std::size_t b) const { return even[a * n + b]; }
    int od(std::size_t a, std::size_t b) const { return odd[a * n + b]; }
};

/// Solves s(a) xor s(b) = c constraints by 2-colouring; returns the vertices with s = 1.
std::optional<std::vector<bool>> solve_xor(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, int>>& cons) {
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
    for (auto [a, b, c] : cons) {
        adj[a].emplace_back(b, c);
        adj[b].emplace_back(a, c);
    }
    std::vector<int> s(n, -1);
    for (std::size_t r = 0; r < n; ++r) {
        if (s[r] >= 0) continue;
        s[r] = 0;
        std::queue<std::size_t> q;
        q.push(r);
        while (!q.empty()) {
            std::size_t x = q.front();
            q.pop();
            for (auto [y, c] : adj[x]) {
                int want = s[x] ^ c;
                if (s[y] < 0) {
                    s[y] = want;
                    q.push(y);
                } else if (s[y] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<bool> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = s[i] == 1;
    return out;
}

bool same_up_to_swap(int e1, int o1, int e2, int o2) {
    return (e1 == e2 && o1 == o2) || (e1 == o2 && o1 == e2);
}

} // namespace

bool is_signed_isomorphism(const SignedGraph& g1, const SignedGraph& g2, const SignedIsomorphism& iso) {
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
    if (iso.bijection.size() != g1.vertex_count()) return false;
    std::map<VertexId, VertexId> pi;
    VertexSet image;
    for (auto [a, b] : iso.bijection) {
        if (!g1.has_vertex(a) || !g2.has_vertex(b)) return false;
        pi[a] = b;
        image.insert(b);
    }
    if (pi.size() != g1.vertex_count() || image.size() != g2.vertex_count()) return false;
    for (VertexId v : iso.resign_set)
        if (!g2.has_vertex(v)) return false;
    SignedGraph target = resign(g2, iso.resign_set);
    PairCounts c1(g1), c2(target);
    for (std::size_t i = 0; i < g1.vertex_count(); ++i) {
        for (std::size_t j = i + 1; j < g1.vertex_count(); ++j) {
            std::size_t a = target.vertex_index(pi[g1.vertices()[i]]);
            std::size_t b = target.vertex_index(pi[g1.vertices()[j]]);
            if (c1.ev(i, j) != c2.ev(a, b) || c1.od(i, j) != c2.od(a, b)) return false;
        }
    }
    return true;
}

std::optional<SignedIsomorphism> signed_isomorphic(const SignedGraph& g1, const SignedGraph& g2) {
    const std::size_t n = g1.vertex_count();
    if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;
    PairCounts c1(g1), c2(g2);
    std::vector<int> deg1(n, 0), deg2(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            deg1[i] += c1.ev(i, j) + c1.od(i, j);
            deg2[i] += c2.ev(i, j) + c2.od(i, j);
        }
    {
        auto s1 = deg1, s2 = deg2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }

    std::vector<std::size_t> pi(n, 0);
    std::vector<bool> used(n, false);
    std::optional<SignedIsomorphism> found;

    auto finish = [&]() -> bool {
        std::vector<std::tuple<std::size_t, std::size_t, int>> cons;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                int e1 = c1.ev(i, j), o1 = c1.od(i, j);
                int e2 = c2.ev(pi[i], pi[j]), o2 = c2.od(pi[i], pi[j]);
                if (e1 == o1) continue;
                cons.emplace_back(pi[i], pi[j], (e1 == e2 && o1 == o2) ? 0 : 1);
            }
        auto s = solve_xor(n, cons);
        if (!s) return false;
        SignedIsomorphism iso;
        for (std::size_t i = 0; i < n; ++i) iso.bijection.emplace_back(g1.vertices()[i], g2.vertices()[pi[i]]);
        for (std::size_t i = 0; i < n; ++i)
            if ((*s)[i]) iso.resign_set.insert(g2.vertices()[i]);
        found = std::move(iso);
        return true;
    };

    std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
        if (i == n) return finish();
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand] || deg1[i] != deg2[cand]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = same_up_to_swap(c1.ev(i, j), c1.od(i, j), c2.ev(cand, pi[j]), c2.od(cand, pi[j]));
            if (!ok) continue;
            pi[i] = cand;
            used[cand] = true;
            if (extend(i + 1)) return true;
            used[cand] = false;
        }
        return false;
    };
    extend(0);
    return found;
}

// --- canonical form ----------------------------------------------------------------
//
// Individualisation-refinement over a re-signing invariant colouring: pair types are
// unordered {even count, odd count}, so colour refinement never distinguishes graphs that
// differ by a re-signing. Each leaf ordering is encoded after normalising signs along a
// BFS forest of the pairs whose counts are asymmetric; the key is the minimum encoding.

namespace {

struct CanonContext {
    std::size_t n;
    const PairCounts& counts;
    std::vector<int> pair_type;  // n*n, 0 = non-adjacent
    std::string best;
    bool have_best = false;
};

int encode_pair_type(int e, int o) {
    if (e == 0 && o == 0) return 0;
    int lo = std::min(e, o), hi = std::max(e, o);
    return 1 + lo * 64 + hi;
}

std::vector<int> refine(const CanonContext& ctx, std::vector<int> colour) {
    const std::size_t n = ctx.n;
    for (;;) {
        std::vector<std::pair<std::vector<int>, std::size_t>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<int> s;
            s.push_back(colour[v]);
            std::vector<std::pair<int, int>> nb;
            for (std::size_t w = 0; w < n; ++w) {
                int t = ctx.pair_type[v * n + w];
                if (w != v && t != 0) nb.emplace_back(t, colour[w]);
            }
            std::sort(nb.begin(), nb.end());
            for (auto [t, c] : nb) {
                s.push_back(t);
                s.push_back(c);
            }
            sig[v] = {std::move(s), v};
        }
        std::vector<std::vector<int>> distinct;
        for (auto& [s, v] : sig) distinct.push_back(s);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<int> next(n);
        for (std::size_t v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v].first) - distinct.begin());
        auto count_classes = [](const std::vector<int>& c) {
            auto t = c;
            std::sort(t.begin(), t.end());
            return std::unique(t.begin(), t.end()) - t.begin();
        };
        if (count_classes(next) == count_classes(colour)) return next;
        colour = std::move(next);
    }
}

std::string encode_leaf(const CanonContext& ctx, const std::vector<int>& colour) {
    const std::size_t n = ctx.n;
    std::vector<std::size_t> order(n);  // position -> vertex
    for (std::size_t v = 0; v < n; ++v) order[static_cast<std::size_t>(colour[v])] = v;
    // Sign normalisation: BFS over asymmetric pairs in position order; make each
    // tree pair carry more even than odd edges.
    std::vector<int> s(n, -1);
    for (std::size_t r = 0; r < n; ++r) {
        if (s[r] >= 0) continue;
        s[r] = 0;
        std::queue<std::size_t> q;
        q.push(r);
        while (!q.empty()) {
            std::size_t x = q.front();
            q.pop();
            for (std::size_t y = 0; y < n; ++y) {
                if (s[y] >= 0) continue;
                int e = ctx.counts.ev(order[x], order[y]), o = ctx.counts.od(order[x], order[y]);
                if (e == o) continue;
                s[y] = s[x] ^ (e > o ? 0 : 1);
                q.push(y);
            }
        }
    }
    std::string out;
    out.reserve(2 + n * (n - 1));
    out.push_back(static_cast<char>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            int e = ctx.counts.ev(order[i], order[j]), o = ctx.counts.od(order[i], order[j]);
            if (s[i] != s[j]) std::swap(e, o);
            out.push_back(static_cast<char>(e));
            out.push_back(static_cast<char>(o));
        }
    return out;
}

bool exact_twins(const CanonContext& ctx, std::size_t a, std::size_t b) {
    for (std::size_t x = 0; x < ctx.n; ++x) {
        if (x == a || x == b) continue;
        if (ctx.counts.ev(a, x) != ctx.counts.ev(b, x) || ctx.counts.od(a, x) != ctx.counts.od(b, x)) return false;
    }
    return true;
}

void search(CanonContext& ctx, const std::vector<int>& colour) {
    const std::size_t n = ctx.n;
    std::vector<std::vector<std::size_t>> cells(n);
    for (std::size_t v = 0; v < n; ++v) cells[static_cast<std::size_t>(colour[v])].push_back(v);
    const std::vector<std::size_t>* target = nullptr;
    for (const auto& c : cells)
        if (c.size() > 1) {
            target = &c;
            break;
        }
    if (!target) {
        std::string enc = encode_leaf(ctx, colour);
        if (!ctx.have_best || enc < ctx.best) {
            ctx.best = std::move(enc);
            ctx.have_best = true;
        }
        return;
    }
    std::vector<std::size_t> reps;
    for (std::size_t v : *target) {
        bool twin = std::any_of(reps.begin(), reps.end(), [&](std::size_t r) { return exact_twins(ctx, r, v); });
        if (!twin) reps.push_back(v);
    }
    for (std::size_t v : reps) {
        std::vector<int> c(n);
        for (std::size_t w = 0; w < n; ++w) c[w] = colour[w] * 2 + ((colour[w] == colour[v] && w != v) ? 1 : 0);
        search(ctx, refine(ctx, c));
    }
}

} // namespace

std::string canonical_key(const SignedGraph& g) {
    PairCounts counts(g);
    CanonContext ctx{g.vertex_count(), counts, {}, {}, false};
    const std::size_t n = ctx.n;
    ctx.pair_type.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) ctx.pair_type[a * n + b] = encode_pair_type(counts.ev(a, b), counts.od(a, b));
    if (n == 0) return std::string(1, '\0');
    search(ctx, refine(ctx, std::vector<int>(n, 0)));
    return ctx.best;
}

} // namespace signu
