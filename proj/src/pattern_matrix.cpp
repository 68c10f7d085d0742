#include "signu/pattern_matrix.hpp"

#include "signu/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace signu {

PatternMatrix::PatternMatrix(SignedGraph host, Eigen::MatrixXd entries) : host_(std::move(host)), entries_(std::move(entries)) {
    const auto n = static_cast<Eigen::Index>(host_.vertex_count());
    if (entries_.rows() != n || entries_.cols() != n) {
        throw InputError("matrix is " + std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()) +
                         " but the host has " + std::to_string(n) + " vertices");
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (entries_(i, j) != entries_(j, i)) throw InputError("matrix is not symmetric");
}

double PatternMatrix::at(VertexId a, VertexId b) const {
    return entries_(static_cast<Eigen::Index>(host_.vertex_index(a)), static_cast<Eigen::Index>(host_.vertex_index(b)));
}

EntrySign required_sign(const SignedGraph& g, VertexId a, VertexId b) {
    bool even = false, odd = false;
    for (const Edge& e : g.edges()) {
        if (!e.joins(a, b)) continue;
        (e.odd() ? odd : even) = true;
    }
    if (even && odd) return EntrySign::free;
    if (even) return EntrySign::negative;
    if (odd) return EntrySign::positive;
    return EntrySign::zero;
}

bool pattern_check(const PatternMatrix& a) {
    const auto& g = a.host();
    const auto& m = a.entries();
    const std::size_t n = g.vertex_count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double x = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            switch (required_sign(g, g.vertices()[i], g.vertices()[j])) {
            case EntrySign::zero:
                if (x != 0.0) return false;
                break;
            case EntrySign::negative:
                if (!(x < 0.0)) return false;
                break;
            case EntrySign::positive:
                if (!(x > 0.0)) return false;
                break;
            case EntrySign::free:
                break;
            }
        }
    return true;
}

NullityReport psd_nullity(const Eigen::MatrixXd& a, const Tolerance& tol) {
    NullityReport r;
    if (a.rows() == 0) {
        r.is_psd = r.strict_psd = true;
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    double scale = lambda.cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    r.scale = scale;
    r.min_eigenvalue = lambda.minCoeff();
    r.strict_psd = r.min_eigenvalue >= 0.0;
    r.is_psd = r.min_eigenvalue >= -tol.psd_slack * scale;
    const double zero = tol.zero * scale;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        double x = std::abs(lambda(i));
        if (x <= zero) ++r.nullity;
        if (x > 0.0 && x > zero / 100.0 && x < zero * 100.0) r.near_threshold = true;
    }
    return r;
}

NullityReport psd_nullity(const PatternMatrix& a, const Tolerance& tol) { return psd_nullity(a.entries(), tol); }

namespace {

std::vector<std::pair<std::size_t, std::size_t>> free_pairs(const SignedGraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = g.vertex_count();
    std::vector<bool> adj(n * n, false);
    for (const Edge& e : g.edges()) {
        std::size_t a = g.vertex_index(e.u), b = g.vertex_index(e.v);
        adj[a * n + b] = adj[b * n + a] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!adj[i * n + j]) out.emplace_back(i, j);
    return out;
}

Eigen::MatrixXd symmetric_unit(std::size_t n, std::size_t i, std::size_t j, double value) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
    return x;
}

} // namespace

SapReport sap_check(const PatternMatrix& a, const Tolerance& tol) {
    SapReport r;
    const auto pairs = free_pairs(a.host());
    const std::size_t n = a.size();
    const std::size_t f = pairs.size();
    r.free_coordinates = static_cast<int>(f);
    if (f == 0) {
        r.holds = true;
        return r;
    }
    // Column p holds vec(A (E_ij + E_ji)): A's column i lands in column j of the product and vice versa.
    const auto& m = a.entries();
    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(ni * ni, static_cast<Eigen::Index>(f));
    for (std::size_t p = 0; p < f; ++p) {
        const auto i = static_cast<Eigen::Index>(pairs[p].first), j = static_cast<Eigen::Index>(pairs[p].second);
        for (Eigen::Index row = 0; row < ni; ++row) {
            lin(row * ni + j, static_cast<Eigen::Index>(p)) += m(row, i);
            lin(row * ni + i, static_cast<Eigen::Index>(p)) += m(row, j);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lin, Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cutoff = tol.zero * (sigma.size() ? sigma(0) : 0.0);
    int rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        if (sigma(k) > cutoff) ++rank;
    r.rank = rank;
    r.holds = rank == static_cast<int>(f);
    const Eigen::MatrixXd& v = svd.matrixV();
    for (Eigen::Index k = rank; k < static_cast<Eigen::Index>(f); ++k) {
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(ni, ni);
        for (std::size_t p = 0; p < f; ++p) x += symmetric_unit(n, pairs[p].first, pairs[p].second, v(static_cast<Eigen::Index>(p), k));
        r.witness.basis.push_back(std::move(x));
    }
    return r;
}

double witness_residual(const SapWitnessSpace& space, const Eigen::MatrixXd& x) {
    const double norm = x.norm();
    if (norm == 0.0) return 0.0;
    if (space.basis.empty()) return 1.0;
    const Eigen::Index len = x.size();
    Eigen::MatrixXd b(len, static_cast<Eigen::Index>(space.basis.size()));
    for (std::size_t k = 0; k < space.basis.size(); ++k)
        b.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(space.basis[k].data(), len);
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), len);
    Eigen::VectorXd coef = b.colPivHouseholderQr().solve(xv);
    return (b * coef - xv).norm() / norm;
}

Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& a, const std::vector<std::size_t>& eliminate, const Tolerance& tol) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<bool> gone(n, false);
    for (std::size_t i : eliminate) {
        if (i >= n) throw InputError("schur_complement: index out of range");
        gone[i] = true;
    }
    std::vector<Eigen::Index> keep, drop;
    for (std::size_t i = 0; i < n; ++i) (gone[i] ? drop : keep).push_back(static_cast<Eigen::Index>(i));
    if (drop.empty()) return a;
    const auto k = static_cast<Eigen::Index>(keep.size()), c = static_cast<Eigen::Index>(drop.size());
    Eigen::MatrixXd acc(c, c), akc(k, c), akk(k, k);
    for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = 0; j < c; ++j) acc(i, j) = a(drop[i], drop[j]);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < c; ++j) akc(i, j) = a(keep[i], drop[j]);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) akk(i, j) = a(keep[i], keep[j]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(acc, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    if (!(lo > tol.zero * scale)) {
        throw PreconditionError("schur_complement: eliminated block is not positive definite (min eigenvalue " +
                                std::to_string(lo) + ")");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(acc);
    Eigen::MatrixXd b = akk - akc * llt.solve(akc.transpose());
    return (b + b.transpose()) / 2.0;
}

PatternMatrix schur_complement(const PatternMatrix& a, const VertexSet& c, const SignedGraph& reduced_host, const Tolerance& tol) {
    std::vector<std::size_t> idx;
    std::vector<VertexId> rest;
    for (VertexId v : c) idx.push_back(a.host().vertex_index(v));
    for (VertexId v : a.host().vertices())
        if (!c.count(v)) rest.push_back(v);
    if (reduced_host.vertices() != rest) throw InputError("schur_complement: reduced host must carry exactly the remaining vertices");
    return PatternMatrix(reduced_host, schur_complement(a.entries(), idx, tol));
}

std::string to_string(WitnessName name) {
    switch (name) {
    case WitnessName::k2eq:
        return "k2eq";
    case WitnessName::k3eq:
        return "k3eq";
    case WitnessName::k4odd:
        return "k4o";
    }
    return "?";
}

PatternMatrix canonical_witness(WitnessName name) {
    switch (name) {
    case WitnessName::k2eq:
        return PatternMatrix(make_k2eq(), Eigen::MatrixXd::Zero(2, 2));
    case WitnessName::k3eq:
        return PatternMatrix(make_k3eq(), Eigen::MatrixXd::Zero(3, 3));
    case WitnessName::k4odd:
        return PatternMatrix(make_k4odd(), Eigen::MatrixXd::Ones(4, 4));
    }
    throw InputError("unknown witness");
}

PatternMatrix sample_psd(const SignedGraph& g, std::uint64_t seed, SampleStrategy strategy) {
    std::mt19937_64 rng(seed);
    const std::size_t n = g.vertex_count();
    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ni, ni);
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    if (strategy == SampleStrategy::incidence) {
        for (const Edge& e : g.edges()) {
            Eigen::VectorXd d = Eigen::VectorXd::Zero(ni);
            d(static_cast<Eigen::Index>(g.vertex_index(e.u))) = 1.0;
            d(static_cast<Eigen::Index>(g.vertex_index(e.v))) = e.odd() ? 1.0 : -1.0;
            m += weight(rng) * d * d.transpose();
        }
        std::uniform_real_distribution<double> small(0.0, 0.1);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (required_sign(g, g.vertices()[i], g.vertices()[j]) != EntrySign::free || !coin(rng)) continue;
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += small(rng);
                m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += small(rng);
            }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            m(ii, ii) = unit(rng);
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto jj = static_cast<Eigen::Index>(j);
                double x = 0.0;
                switch (required_sign(g, g.vertices()[i], g.vertices()[j])) {
                case EntrySign::zero:
                    break;
                case EntrySign::negative:
                    x = -weight(rng);
                    break;
                case EntrySign::positive:
                    x = weight(rng);
                    break;
                case EntrySign::free:
                    x = 2.0 * unit(rng);
                    break;
                }
                m(ii, jj) = m(jj, ii) = x;
            }
        }
        if (n > 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
            m -= es.eigenvalues().minCoeff() * Eigen::MatrixXd::Identity(ni, ni);
        }
    }
    Eigen::MatrixXd sym = (m + m.transpose()) / 2.0;
    return PatternMatrix(g, sym);
}

bool kernel_support_check(const PatternMatrix& a, const Tolerance& tol) {
    if (!is_connected(a.host()) || !is_bipartite(a.host())) {
        throw InputError("kernel_support_check: host must be connected and bipartite");
    }
    if (a.size() == 0) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.entries());
    const Eigen::VectorXd& lambda = es.eigenvalues();
    double scale = lambda.cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    if (lambda.minCoeff() < -tol.psd_slack * scale) throw InputError("kernel_support_check: matrix is not PSD");
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (std::abs(lambda(k)) > tol.zero * scale) continue;
        Eigen::VectorXd x = es.eigenvectors().col(k);
        const double cap = x.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (std::abs(x(i)) <= tol.zero * cap) return false;
    }
    return true;
}

std::string format_matrix_text(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    os << "matrix v1 " << m.rows() << "\n";
    os << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "\n";
    }
    return os.str();
}

Eigen::MatrixXd parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long n = -1;
    std::vector<double> values;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (n < 0) {
            std::string magic, version;
            if (!(ls >> magic)) continue;
            ls >> version >> n;
            if (magic != "matrix" || version != "v1" || n < 0) throw InputError("expected header 'matrix v1 <n>'");
            continue;
        }
        double x;
        while (ls >> x) values.push_back(x);
        if (!ls.eof()) throw InputError("matrix: non-numeric entry");
    }
    if (n < 0) throw InputError("missing header 'matrix v1 <n>'");
    if (values.size() != static_cast<std::size_t>(n * n)) throw InputError("matrix: expected " + std::to_string(n * n) + " entries");
    Eigen::MatrixXd m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = values[static_cast<std::size_t>(i * n + j)];
    return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> r(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(j)] = m(i, j);
        rows.push_back(r);
    }
    return {{"n", m.rows()}, {"rows", rows}};
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("n").get<Eigen::Index>();
        const auto& rows = j.at("rows");
        if (static_cast<Eigen::Index>(rows.size()) != n) throw InputError("matrix record: row count mismatch");
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto r = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
            if (static_cast<Eigen::Index>(r.size()) != n) throw InputError("matrix record: ragged row");
            for (Eigen::Index k = 0; k < n; ++k) m(i, k) = r[static_cast<std::size_t>(k)];
        }
        return m;
    } catch (const nlohmann::json::exception& ex) {
        throw InputError(std::string("matrix record: ") + ex.what());
    }
}

} // namespace signu
