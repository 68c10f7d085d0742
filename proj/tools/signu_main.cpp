#include "acceptance_suite.hpp"

#include "signu/deltawye.hpp"
#include "signu/errors.hpp"
#include "signu/generators.hpp"
#include "signu/graph_io.hpp"
#include "signu/pattern_matrix.hpp"
#include "signu/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace signu;

enum ExitCode { decided = 0, input_error = 1, capacity_error = 2, inconsistency = 3 };

constexpr int kHardMaxVertices = 16;
constexpr int kHardMaxEdges = 20;

struct RunConfig {
    std::string subcommand;
    std::string input;
    GraphFormat format = GraphFormat::text;
    Tolerance tol;
    int max_vertices = 12;
    int max_edges = kHardMaxEdges;
    std::uint64_t seed = 0;
    std::string certificate;
    std::string trace;
    std::string dot;
    int verbosity = 0;

    std::string target;
    std::string witness;
    std::vector<int> only;
    int fuzz_n = 6;
    int fuzz_m = 10;
    int fuzz_count = 100;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

SignedGraph load_input(const RunConfig& cfg) {
    SignedGraph g = load_graph(cfg.input, cfg.format);
    if (static_cast<int>(g.vertex_count()) > cfg.max_vertices || static_cast<int>(g.edge_count()) > cfg.max_edges)
        throw CapacityError(cfg.input + ": " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
                            " edges exceed the cap of " + std::to_string(cfg.max_vertices) + "/" + std::to_string(cfg.max_edges));
    if (!cfg.dot.empty()) write_file(cfg.dot, to_dot(g));
    return g;
}

int run_classify(const RunConfig& cfg) {
    const SignedGraph g = load_input(cfg);
    const Verdict v = decide_nu(g);
    const ValidationResult check = validate_verdict(g, v);
    if (!check.ok) {
        std::cerr << "certificate rejected at node '" << check.node << "': " << check.message << "\n";
        return inconsistency;
    }
    if (!cfg.certificate.empty()) write_file(cfg.certificate, verdict_to_json(g, v).dump(2) + "\n");
    std::cout << verdict_summary(v) << "\n";
    if (cfg.verbosity > 0)
        for (const std::string& note : v.notes) std::cerr << "note: " << note << "\n";
    return decided;
}

int run_minor(const RunConfig& cfg) {
    const SignedGraph g = load_input(cfg);
    const MinorTarget target = *minor_target_from_string(cfg.target);
    const auto w = brute_force_minor(g, target);
    if (!w) {
        std::cout << "no " << cfg.target << " minor\n";
        return decided;
    }
    if (!check_minor_witness(g, *w)) {
        std::cerr << "minor witness failed its own check\n";
        return inconsistency;
    }
    std::cout << cfg.target << " minor found (" << w->script.size() << " operations)\n";
    if (!cfg.certificate.empty()) write_file(cfg.certificate, minor_witness_to_json(*w).dump(2) + "\n");
    if (cfg.verbosity > 0) std::cerr << minor_witness_to_json(*w).dump() << "\n";
    return decided;
}

int run_reduce(const RunConfig& cfg) {
    const SignedGraph g = load_input(cfg);
    const ReductionTrace t = reduce_to_k2eq(g);
    const ReplayResult r = replay(t);
    if (!r.ok) {
        std::cerr << "trace replay failed at move " << r.failing_index << ": " << r.message << "\n";
        return inconsistency;
    }
    if (!cfg.trace.empty()) write_file(cfg.trace, trace_to_json(t).dump(2) + "\n");
    std::cout << "reduced to K2= in " << t.moves.size() << " moves\n";
    for (const Move& m : t.moves) std::cout << "  " << move_to_json(m).dump() << "\n";
    return decided;
}

int run_witness(const RunConfig& cfg) {
    const WitnessName name = cfg.witness == "k2eq" ? WitnessName::k2eq : cfg.witness == "k3eq" ? WitnessName::k3eq : WitnessName::k4odd;
    const PatternMatrix a = canonical_witness(name);
    const NullityReport n = psd_nullity(a, cfg.tol);
    const SapReport s = sap_check(a, cfg.tol);
    std::cout << format_matrix_text(a.entries());
    std::cout << "pattern " << (pattern_check(a) ? "ok" : "violated") << "\n";
    std::cout << "psd " << (n.is_psd ? "yes" : "no") << ", nullity " << n.nullity << "\n";
    std::cout << "strong Arnold property " << (s.holds ? "holds" : "fails") << "\n";
    if (!cfg.dot.empty()) write_file(cfg.dot, to_dot(a.host(), cfg.witness));
    return pattern_check(a) && n.is_psd && s.holds ? decided : inconsistency;
}

int run_selftest(const RunConfig& cfg) {
    acceptance::Options opt;
    opt.seed = cfg.seed;
    opt.only = cfg.only;
    bool all = true;
    acceptance::run(opt, [&](const acceptance::CriterionResult& r) {
        std::cout << acceptance::format_line(r) << std::endl;
        all = all && r.passed;
    });
    return all ? decided : inconsistency;
}

// Every instance is decided, validated and compared against the exhaustive minor search.
int run_fuzz(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::map<Answer, int> tally;
    int failures = 0;
    for (int i = 0; i < cfg.fuzz_count; ++i) {
        const SignedGraph g = random_signed_graph(rng, static_cast<std::size_t>(cfg.fuzz_n), static_cast<std::size_t>(cfg.fuzz_m));
        std::string problem;
        try {
            const Verdict v = decide_nu(g);
            ++tally[v.answer];
            const ValidationResult check = validate_verdict(g, v);
            const bool bad = brute_force_minor(g, MinorTarget::k4odd) || brute_force_minor(g, MinorTarget::k3eq);
            if (!check.ok) problem = "certificate rejected: " + check.message;
            else if (bad != (v.answer == Answer::nu_ge_3)) problem = "verdict disagrees with the minor search";
            if (!cfg.certificate.empty())
                write_file(cfg.certificate + "/instance-" + std::to_string(i) + ".json", verdict_to_json(g, v).dump(2) + "\n");
        } catch (const InputError&) {
            ++tally[Answer::nu_le_1];
        } catch (const InternalError& e) {
            problem = e.what();
        }
        if (!problem.empty()) {
            ++failures;
            std::cout << "instance " << i << ": " << problem << "\n" << format_graph_text(g);
        }
    }
    std::cout << cfg.fuzz_count << " instances: " << tally[Answer::nu_le_1] << " nu <= 1, " << tally[Answer::nu_eq_2] << " nu = 2, "
              << tally[Answer::nu_ge_3] << " nu >= 3, " << failures << " failures\n";
    return failures == 0 ? decided : inconsistency;
}

int run(const RunConfig& cfg) {
    try {
        if (cfg.subcommand == "classify") return run_classify(cfg);
        if (cfg.subcommand == "minor") return run_minor(cfg);
        if (cfg.subcommand == "reduce") return run_reduce(cfg);
        if (cfg.subcommand == "witness") return run_witness(cfg);
        if (cfg.subcommand == "selftest") return run_selftest(cfg);
        if (cfg.subcommand == "fuzz") return run_fuzz(cfg);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const MoveError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return capacity_error;
    } catch (const std::exception& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return inconsistency;
    }
    return input_error;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Decide nu(G, Sigma) <= 1, = 2 or >= 3 for small signed graphs"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::string format = "text";
    double tol = cfg.tol.zero;
    app.add_option("--format", format, "Input codec")->check(CLI::IsMember({"text", "records"}));
    app.add_option("--tol", tol, "Eigenvalue zero threshold, relative")->check(CLI::PositiveNumber);
    app.add_option("--max-vertices", cfg.max_vertices)->check(CLI::Range(1, kHardMaxVertices));
    app.add_option("--max-edges", cfg.max_edges)->check(CLI::Range(1, kHardMaxEdges));
    app.add_option("--seed", cfg.seed);
    app.add_flag("-v,--verbose", cfg.verbosity);

    auto* classify = app.add_subcommand("classify", "Decide nu and write a certificate");
    classify->add_option("graph", cfg.input)->required()->check(CLI::ExistingFile);
    classify->add_option("-o,--certificate", cfg.certificate, "Certificate output path");
    classify->add_option("--dot", cfg.dot, "DOT rendering of the input");

    auto* minor = app.add_subcommand("minor", "Search for a signed minor");
    minor->add_option("graph", cfg.input)->required()->check(CLI::ExistingFile);
    minor->add_option("--target", cfg.target)->required()->check(CLI::IsMember({"k4o", "k3eq", "k2eq"}));
    minor->add_option("-o,--certificate", cfg.certificate, "Witness output path");
    minor->add_option("--dot", cfg.dot);

    auto* reduce = app.add_subcommand("reduce", "Reduce a plane block with two odd faces to K2=");
    reduce->add_option("graph", cfg.input)->required()->check(CLI::ExistingFile);
    reduce->add_option("-o,--trace", cfg.trace, "Trace output path");
    reduce->add_option("--dot", cfg.dot);

    auto* witness = app.add_subcommand("witness", "Print a canonical nullity witness and check it");
    witness->add_option("name", cfg.witness)->required()->check(CLI::IsMember({"k2eq", "k3eq", "k4o"}));
    witness->add_option("--dot", cfg.dot);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    selftest->add_option("--only", cfg.only, "Criterion numbers");

    auto* fuzz = app.add_subcommand("fuzz", "Cross-check random graphs against the minor search");
    fuzz->add_option("--n", cfg.fuzz_n, "Maximum vertices")->check(CLI::Range(1, 8));
    fuzz->add_option("--m", cfg.fuzz_m, "Maximum edges")->check(CLI::Range(0, 12));
    fuzz->add_option("--count", cfg.fuzz_count)->check(CLI::NonNegativeNumber);
    fuzz->add_option("--certificate-dir", cfg.certificate, "Directory for per-instance certificates")->check(CLI::ExistingDirectory);

    for (auto* sub : {classify, minor, reduce, witness, selftest, fuzz}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? decided : input_error;
    }
    cfg.format = format == "records" ? GraphFormat::records : GraphFormat::text;
    cfg.tol.zero = cfg.tol.psd_slack = tol;
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return run(cfg);
}
