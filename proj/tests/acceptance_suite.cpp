#include "acceptance_suite.hpp"

#include "oracles.hpp"

#include "signu/classify.hpp"
#include "signu/deltawye.hpp"
#include "signu/errors.hpp"
#include "signu/generators.hpp"
#include "signu/pattern_matrix.hpp"
#include "signu/pipeline.hpp"
#include "signu/splits.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace signu::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && passed) detail << "FIRST FAILURE: " << what << "; ";
        passed = passed && ok;
    }
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool bad_minor(const SignedGraph& g) {
    return brute_force_minor(g, MinorTarget::k4odd).has_value() || brute_force_minor(g, MinorTarget::k3eq).has_value();
}

std::vector<SignedGraph> oracle_corpus(std::uint64_t seed) {
    auto corpus = exhaustive_corpus(4, 6);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 500; ++i) corpus.push_back(random_signed_graph(rng, 6, 10));
    return corpus;
}

Eigen::MatrixXd block_of(const PatternMatrix& a, const VertexSet& vs) {
    std::vector<Eigen::Index> idx;
    for (VertexId v : vs) idx.push_back(static_cast<Eigen::Index>(a.host().vertex_index(v)));
    return a.entries()(idx, idx);
}

void canonical_values(Outcome& out, std::uint64_t) {
    const auto t0 = Clock::now();
    struct Case {
        WitnessName name;
        SignedGraph g;
        int nullity;
        Answer answer;
    };
    for (const Case& c : {Case{WitnessName::k2eq, make_k2eq(), 2, Answer::nu_eq_2}, Case{WitnessName::k3eq, make_k3eq(), 3, Answer::nu_ge_3},
                          Case{WitnessName::k4odd, make_k4odd(), 3, Answer::nu_ge_3}}) {
        const PatternMatrix w = canonical_witness(c.name);
        const NullityReport r = psd_nullity(w);
        const std::string tag = to_string(c.name);
        out.require(pattern_check(w), tag + " witness pattern");
        out.require(r.is_psd && r.nullity == c.nullity, tag + " nullity");
        out.require(sap_check(w).holds, tag + " SAP");
        const Verdict v = decide_nu(c.g);
        out.require(v.answer == c.answer, tag + " verdict");
        out.detail << tag << ": nullity " << r.nullity << ", " << to_string(v.answer) << "; ";
    }
    const double s = since(t0);
    out.require(s < 1.0, "runtime under 1 s");
}

void oracle_equivalence(Outcome& out, std::uint64_t seed) {
    const auto t0 = Clock::now();
    auto corpus = oracle_corpus(seed);
    int disagree = 0, invalid = 0, ge3 = 0;
    for (const SignedGraph& g : corpus) {
        const Verdict v = decide_nu(g);
        const bool minor = bad_minor(g);
        disagree += ((v.answer == Answer::nu_ge_3) != minor) ? 1 : 0;
        invalid += validate_verdict(g, v).ok ? 0 : 1;
        ge3 += minor ? 1 : 0;
    }
    out.require(disagree == 0, "decide_nu agrees with the minor oracle");
    out.require(invalid == 0, "every certificate validates");
    out.require(since(t0) < 600.0, "runtime under 10 min");
    out.detail << corpus.size() << " graphs, " << ge3 << " with a bad minor, " << disagree << " disagreements, " << invalid
               << " invalid certificates";
}

void leaf_cases(Outcome& out, std::uint64_t seed) {
    auto corpus = oracle_corpus(seed);
    int leaves = 0, unclassified = 0;
    for (const SignedGraph& g : corpus) {
        if (!is_two_connected(g) || find_split(g) || bad_minor(g)) continue;
        ++leaves;
        const auto classes = matching_classes(g);
        bool hit = false;
        for (LeafTag t : classes) hit = hit || t != LeafTag::bipartite;
        if (!hit) ++unclassified;
    }
    out.require(unclassified == 0, "every split-free block without a bad minor is classified");
    out.require(leaves > 0, "the corpus contains split-free blocks");
    out.detail << leaves << " split-free blocks without a bad minor, " << unclassified << " unclassified";
}

void delta_y_reducibility(Outcome& out, std::uint64_t seed) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(seed + 4);
    int reduced = 0, moves = 0, broken = 0, p2 = 0;
    for (int i = 0; i < 100; ++i) {
        PlaneBlock pb = random_plane_block(rng, 14);
        auto emb = two_odd_faces(pb.graph);
        if (!emb || emb->odd_faces != 2) {
            ++broken;
            continue;
        }
        ReductionTrace t = reduce_to_k2eq(pb.graph);
        SignedGraph cur = t.initial;
        bool invariants = true;
        for (Move m : t.moves) {
            cur = apply_move(cur, m);
            p2 += m.kind == MoveKind::delta_p2 ? 1 : 0;
            auto e = two_odd_faces(cur);
            invariants = invariants && is_block(cur) && e && e->odd_faces == 2;
        }
        if (invariants && replay(t).ok && signed_isomorphic(t.final_graph, make_k2eq())) ++reduced;
        moves += static_cast<int>(t.moves.size());
    }
    out.require(broken == 0, "generator yields exactly two odd faces");
    out.require(reduced == 100, "all blocks reduce with valid traces");
    out.require(since(t0) < 300.0, "runtime under 5 min");
    out.detail << reduced << "/100 reduced, " << moves << " moves in total, " << p2 << " of them delta_p2";
}

void double_prism(Outcome& out, std::uint64_t) {
    const SignedGraph dp = make_double_prism();
    const Verdict v = decide_nu(dp);
    out.require(v.answer == Answer::nu_eq_2, "verdict nu_eq_2");
    EngineOptions opt;
    opt.order = {MoveKind::delta_y, MoveKind::parallel_series, MoveKind::parallel, MoveKind::series};
    opt.kind_limit = {{MoveKind::delta_y, 2}};
    opt.require_two_odd_faces = false;
    const ReductionTrace t = reduce_to_k2eq(dp, opt);
    std::string shape;
    std::size_t i = 0;
    bool ok = t.moves.size() > 2 && t.moves[0].kind == MoveKind::delta_y && t.moves[1].kind == MoveKind::delta_y;
    for (i = 2; i < t.moves.size() && t.moves[i].kind != MoveKind::parallel; ++i)
        ok = ok && (t.moves[i].kind == MoveKind::parallel_series || t.moves[i].kind == MoveKind::series);
    for (; i < t.moves.size(); ++i) ok = ok && t.moves[i].kind == MoveKind::parallel;
    for (const Move& m : t.moves) shape += to_string(m.kind) + " ";
    out.require(ok, "trace shape delta_y, delta_y, series-parallel, parallel");
    out.require(replay(t).ok && signed_isomorphic(t.final_graph, make_k2eq()).has_value(), "trace ends at K2=");
    out.require(brute_force_minor(dp, MinorTarget::k2eq).has_value(), "K2= minor found");
    out.require(!brute_force_minor(dp, MinorTarget::k4odd) && !brute_force_minor(dp, MinorTarget::k3eq), "no bad minor");
    out.detail << "trace: " << shape;
}

void schur_transport(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 6);
    int done = 0, skipped = 0, psd = 0, same_nullity = 0, in_pattern = 0, nonneg_inverse = 0, singular = 0;
    std::uint64_t sample_seed = seed * 1000 + 6;
    while (done < 200 && skipped < 2000) {
        CliqueSetup cs = random_clique_setup(rng);
        const auto strategy = (done + skipped) % 2 ? SampleStrategy::shifted : SampleStrategy::incidence;
        const PatternMatrix a = sample_psd(cs.g, sample_seed++, strategy);
        std::optional<PatternMatrix> b;
        try {
            b = schur_complement(a, cs.c, cs.h);
        } catch (const PreconditionError&) {
            ++skipped;
            continue;
        }
        ++done;
        const NullityReport ra = psd_nullity(a), rb = psd_nullity(*b);
        psd += rb.is_psd ? 1 : 0;
        same_nullity += ra.nullity == rb.nullity ? 1 : 0;
        singular += ra.nullity > 0 ? 1 : 0;
        in_pattern += pattern_check(*b) ? 1 : 0;
        // Re-sign C so its induced graph is all even; the block is then an M-matrix.
        Eigen::MatrixXd ac = block_of(a, cs.c);
        Eigen::VectorXd d(ac.rows());
        Eigen::Index k = 0;
        for (VertexId v : cs.c) d(k++) = cs.potential.at(v) ? -1.0 : 1.0;
        const Eigen::MatrixXd m = d.asDiagonal() * ac * d.asDiagonal();
        const Eigen::MatrixXd inv = m.inverse();
        nonneg_inverse += inv.minCoeff() >= -1e-10 * inv.cwiseAbs().maxCoeff() ? 1 : 0;
    }
    out.require(done == 200, "200 usable instances");
    out.require(psd == done, "Schur complement is PSD");
    out.require(same_nullity == done, "nullity preserved");
    out.require(in_pattern == done, "Schur complement lies in S(H)");
    out.require(nonneg_inverse == done, "re-signed bipartite block has a nonnegative inverse");
    out.detail << done << " instances (" << skipped << " samples with a singular C block skipped, " << singular
               << " with A singular): psd " << psd << ", nullity kept " << same_nullity << ", in pattern " << in_pattern
               << ", nonnegative inverse " << nonneg_inverse;
}

void separator_nullity(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 7);
    int holding = 0, tries = 0, violations = 0, one_singular = 0;
    while (holding < 200 && tries < 5000) {
        ++tries;
        SeparatorSetup ss = random_separator_setup(rng);
        std::vector<bool> flags;
        for (std::size_t k = 0; k < ss.components.size(); ++k) flags.push_back(rng() % 3 == 0);
        const PatternMatrix a = planted_separator_matrix(ss, flags, rng);
        if (!psd_nullity(a).is_psd || !sap_check(a).holds) continue;
        ++holding;
        int singular = 0;
        for (const VertexSet& c : ss.components) singular += psd_nullity(block_of(a, c)).nullity > 0 ? 1 : 0;
        violations += singular > 1 ? 1 : 0;
        one_singular += singular == 1 ? 1 : 0;
    }
    out.require(holding == 200, "200 PSD matrices with the SAP");
    out.require(violations == 0, "never two singular components");

    int fails = 0, recovered = 0;
    for (int i = 0; i < 200; ++i) {
        SeparatorSetup ss = random_separator_setup(rng);
        std::vector<bool> flags(ss.components.size(), false);
        flags[0] = flags[1] = true;
        const PatternMatrix a = planted_separator_matrix(ss, flags, rng);
        const SapReport r = sap_check(a);
        fails += r.holds ? 0 : 1;
        std::vector<Eigen::VectorXd> kernels;
        for (std::size_t k = 0; k < 2; ++k) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block_of(a, ss.components[k]));
            Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(a.size()));
            Eigen::Index j = 0;
            for (VertexId v : ss.components[k]) full(static_cast<Eigen::Index>(a.host().vertex_index(v))) = es.eigenvectors()(j++, 0);
            kernels.push_back(full);
        }
        const Eigen::MatrixXd x = kernels[0] * kernels[1].transpose() + kernels[1] * kernels[0].transpose();
        recovered += (!r.holds && witness_residual(r.witness, x) < 1e-6) ? 1 : 0;
    }
    out.require(fails == 200, "two singular components always break the SAP");
    out.require(recovered == 200, "uw^T + wu^T lies in the witness space");
    out.detail << holding << " SAP matrices (" << one_singular << " with one singular component, " << violations
               << " with two); converse: " << fails << "/200 fail SAP, witness recovered " << recovered << "/200";
}

void almost_bipartite_bound(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 8);
    int over = 0, max_nullity = 0;
    for (int i = 0; i < 200; ++i) {
        SignedGraph g = random_almost_bipartite_block(rng, 6);
        const auto strategy = i % 2 ? SampleStrategy::shifted : SampleStrategy::incidence;
        const NullityReport r = psd_nullity(sample_psd(g, seed * 1000 + 800 + static_cast<std::uint64_t>(i), strategy));
        over += r.nullity > 2 ? 1 : 0;
        max_nullity = std::max(max_nullity, r.nullity);
    }
    out.require(over == 0, "nullity at most 2");
    out.detail << "200 samples, largest nullity " << max_nullity << " (sampler-level necessary condition)";
}

void core_algebra(Outcome& out, std::uint64_t) {
    auto corpus = exhaustive_corpus(5, 7);
    long checks = 0, violations = 0;
    auto profile = [](const SignedGraph& g) {
        std::map<std::vector<EdgeId>, int> m;
        for (const auto& c : oracle::all_cycles(g)) m[c.edges] = c.odd_count % 2;
        return m;
    };
    for (const SignedGraph& g : corpus) {
        const auto base = profile(g);
        const auto& vs = g.vertices();
        for (unsigned mask = 0; mask < (1U << vs.size()); ++mask) {
            VertexSet u;
            for (std::size_t i = 0; i < vs.size(); ++i)
                if ((mask >> i) & 1U) u.insert(vs[i]);
            ++checks;
            violations += profile(resign(g, u)) == base ? 0 : 1;
        }
        const std::size_t m = g.edge_count();
        for (unsigned mask = 0; mask < (1U << m); ++mask) {
            std::vector<Parity> ps, diff;
            for (std::size_t i = 0; i < m; ++i) {
                ps.push_back((mask >> i) & 1U ? Parity::odd : Parity::even);
                diff.push_back(ps.back() == g.edges()[i].parity ? Parity::even : Parity::odd);
            }
            const SignedGraph other = g.with_parities(ps);
            const auto eq = sign_equivalent(g, other);
            ++checks;
            violations += eq.has_value() == oracle::bipartite_by_cycles(g.with_parities(diff)) ? 0 : 1;
            if (eq) violations += resign(g, *eq) == other ? 0 : 1;
        }
        for (const Edge& e : g.edges()) {
            const SignedGraph h = contract_edge(g, e.id);
            for (const auto& c : oracle::all_cycles(h)) {
                ++checks;
                auto with = c.edges;
                with.push_back(e.id);
                std::sort(with.begin(), with.end());
                auto it = base.find(c.edges);
                if (it == base.end()) it = base.find(with);
                violations += (it != base.end() && it->second == c.odd_count % 2) ? 0 : 1;
            }
        }
    }
    out.require(violations == 0, "zero violations");
    out.detail << corpus.size() << " graphs up to signed isomorphism, " << checks << " checks, " << violations << " violations";
}

std::string certificate_batch(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string text;
    for (int i = 0; i < 40; ++i) {
        SignedGraph g = random_signed_graph(rng, 6, 10);
        text += verdict_to_json(g, decide_nu(g)).dump() + "\n";
    }
    PlaneBlock pb = random_plane_block(rng, 12);
    text += trace_to_json(reduce_to_k2eq(pb.graph)).dump() + "\n";
    text += matrix_to_json(sample_psd(pb.graph, seed, SampleStrategy::shifted).entries()).dump() + "\n";
    return text;
}

void determinism(Outcome& out, std::uint64_t seed) {
    const std::string a = certificate_batch(seed), b = certificate_batch(seed), c = certificate_batch(seed + 1);
    out.require(a == b, "identical seeds give identical bytes");
    out.require(a != c, "different seeds give different bytes");
    out.detail << a.size() << " bytes of certificates, traces and matrices compared";
}

struct Criterion {
    int id;
    const char* name;
    void (*body)(Outcome&, std::uint64_t);
};

const Criterion kCriteria[] = {
    {1, "canonical values", canonical_values},
    {2, "oracle equivalence", oracle_equivalence},
    {3, "case analysis of split-free blocks", leaf_cases},
    {4, "Delta-Y reducibility of two-odd-face blocks", delta_y_reducibility},
    {5, "double prism", double_prism},
    {6, "Schur complement transport", schur_transport},
    {7, "at most one singular component", separator_nullity},
    {8, "almost-bipartite nullity bound", almost_bipartite_bound},
    {9, "core algebra", core_algebra},
    {10, "determinism", determinism},
};

} // namespace

std::vector<CriterionResult> run(const Options& options, const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> results;
    for (const Criterion& c : kCriteria) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        const auto t0 = Clock::now();
        Outcome out;
        try {
            c.body(out, options.seed);
        } catch (const std::exception& ex) {
            out.require(false, std::string("exception: ") + ex.what());
        }
        r.seconds = since(t0);
        r.passed = out.passed;
        r.detail = out.detail.str();
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_line(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + "  criterion " + std::to_string(r.id) + " (" + r.name + "): " + r.detail +
           " [" + secs + " s]";
}

} // namespace signu::acceptance
