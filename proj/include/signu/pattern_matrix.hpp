#pragma once

#include "signu/signed_graph.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace signu {

/// Zero thresholds, both relative to the spectral scale of the matrix under test.
struct Tolerance {
    double zero = 1e-8;       ///< |lambda| <= zero * scale counts as a zero eigenvalue
    double psd_slack = 1e-8;  ///< lambda_min >= -psd_slack * scale counts as PSD
};

/// Symmetric real matrix indexed by the (sorted) vertices of its host graph.
class PatternMatrix {
public:
    /// Throws InputError on a dimension mismatch or an asymmetric entry array.
    PatternMatrix(SignedGraph host, Eigen::MatrixXd entries);

    const SignedGraph& host() const { return host_; }
    const Eigen::MatrixXd& entries() const { return entries_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
    double at(VertexId a, VertexId b) const;

private:
    SignedGraph host_;
    Eigen::MatrixXd entries_;
};

/// Constraint S(G, Sigma) places on an off-diagonal entry.
enum class EntrySign { zero, negative, positive, free };

EntrySign required_sign(const SignedGraph& g, VertexId a, VertexId b);

/// True iff every off-diagonal entry obeys its sign constraint exactly.
bool pattern_check(const PatternMatrix& a);

struct NullityReport {
    bool is_psd = false;         ///< slack verdict: lambda_min >= -slack * scale
    bool strict_psd = false;     ///< lambda_min >= 0 exactly
    int nullity = 0;
    double min_eigenvalue = 0.0;
    double scale = 1.0;          ///< largest |lambda|, or 1 for the zero matrix
    /// Some eigenvalue lies within a factor 100 of a threshold; the verdict is fragile.
    bool near_threshold = false;
};

NullityReport psd_nullity(const Eigen::MatrixXd& a, const Tolerance& tol = {});
NullityReport psd_nullity(const PatternMatrix& a, const Tolerance& tol = {});

/// Basis of symmetric X, zero on the diagonal and on adjacent pairs, with AX = 0.
struct SapWitnessSpace {
    std::vector<Eigen::MatrixXd> basis;
};

struct SapReport {
    bool holds = false;
    int free_coordinates = 0;
    int rank = 0;
    SapWitnessSpace witness;
};

SapReport sap_check(const PatternMatrix& a, const Tolerance& tol = {});

/// Residual of projecting x onto span(witness basis), relative to ||x||.
double witness_residual(const SapWitnessSpace& space, const Eigen::MatrixXd& x);

/// Schur complement of A[C] in A on the remaining vertices, paired with the caller's
/// reduced host (whose vertex set must equal host minus C). Throws PreconditionError
/// when A[C] is not positive definite.
PatternMatrix schur_complement(const PatternMatrix& a, const VertexSet& c, const SignedGraph& reduced_host,
                               const Tolerance& tol = {});

/// Same computation on a bare matrix; `eliminate` holds row indices.
Eigen::MatrixXd schur_complement(const Eigen::MatrixXd& a, const std::vector<std::size_t>& eliminate,
                                 const Tolerance& tol = {});

enum class WitnessName { k2eq, k3eq, k4odd };

/// Zero matrices on K2= and K3=, all-ones on K4o.
PatternMatrix canonical_witness(WitnessName name);
std::string to_string(WitnessName name);

enum class SampleStrategy { incidence, shifted };

/// Random PSD matrix in S(g). `incidence` sums signed rank-one edge terms;
/// `shifted` shifts a random in-pattern matrix by its smallest eigenvalue.
PatternMatrix sample_psd(const SignedGraph& g, std::uint64_t seed, SampleStrategy strategy);

/// Every numerically-zero eigenvector has full support. Requires a connected bipartite
/// host and a PSD matrix (InputError otherwise).
bool kernel_support_check(const PatternMatrix& a, const Tolerance& tol = {});

/// Text format: `matrix v1 <n>` followed by n rows of n numbers.
std::string format_matrix_text(const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_matrix_text(const std::string& text);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

} // namespace signu
