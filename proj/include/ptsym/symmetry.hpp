#pragma once

// Generalized discrete symmetries of a Hermitian Hamiltonian, built from its
// spectral decomposition {E_n, Psi_n}:
//
//   P  = sum_n (-1)^n Psi_n Psi_n^dagger          (linear, involutary)
//   T  = U K0,  U = sum_n Psi_n Psi_n^T           (antilinear, involutary)
//   PT = (P U) K0 = T P                           (antilinear, involutary)
//   C  = P,  CPT = P^2 T = T
//
// Every operator commutes with H and acts on the eigenbasis as
//   P Psi_n = (-1)^n Psi_n,   T Psi_n = Psi_n,   PT Psi_n = (-1)^n Psi_n.
//
// The chi-distorted inner product (chi Psi_m)^dagger Psi_n is diagonal on the
// eigenbasis; its diagonal signs are the chi-norm signature: alternating
// (-1)^n for chi = P and chi = PT (indefinite), all +1 for chi = T and
// chi = CPT (positive definite).
//
// P is invariant under rephasing Psi_n -> e^{i phi} Psi_n; the matrix of U
// is not, but all of T's properties are. The naive choice T = K0 fails to
// commute with any H that has a nonzero imaginary part; the audit quantifies
// that failure.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/errors.hpp"
#include "ptsym/linalg.hpp"
#include "ptsym/operators.hpp"
#include "ptsym/spectral.hpp"

namespace ptsym {

enum class ChiOperator { P, T, PT, CPT };

inline const char* to_string(ChiOperator chi) {
    switch (chi) {
    case ChiOperator::P: return "P";
    case ChiOperator::T: return "T";
    case ChiOperator::PT: return "PT";
    case ChiOperator::CPT: return "CPT";
    }
    return "?";
}

/// Diagonal values, signature and off-diagonal leakage of the chi-distorted
/// Gram matrix C_mn = (chi Psi_m)^dagger Psi_n.
struct NormReport {
    ChiOperator chi = ChiOperator::P;
    Eigen::VectorXcd gram_diagonal;
    double offdiagonal_max = 0.0;
    std::vector<int> signature; // +1 / -1 per state
};

struct SymmetrySuite {
    LinearOperator parity;            // P
    AntilinearOperator time_reversal; // T = U K0
    AntilinearOperator pt;            // PT
    LinearOperator charge;            // C, a copy of P
    AntilinearOperator cpt;           // CPT, a copy of T
    EigenvalueOrdering source_ordering = EigenvalueOrdering::Ascending;
    bool degeneracy_flag = false;
};

/// P = sum_n (-1)^n Psi_n Psi_n^dagger. Phase-invariant by construction.
inline LinearOperator construct_parity(const SpectralDecomposition& s) {
    Eigen::VectorXd signs(s.count());
    for (Eigen::Index n = 0; n < s.count(); ++n) signs[n] = (n % 2 == 0) ? 1.0 : -1.0;
    return {(s.eigenvectors * signs.asDiagonal()) * s.eigenvectors.adjoint()};
}

/// T = U K0 with U = sum_n Psi_n Psi_n^T = V V^T (transpose, no conjugation).
/// The matrix depends on the recorded phase convention; T's properties do not.
inline AntilinearOperator construct_time_reversal(const SpectralDecomposition& s) {
    return {s.eigenvectors * s.eigenvectors.transpose()};
}

/// PT as the composition P after T; also verifies PT = TP, which holds
/// exactly when P and T come from one decomposition.
inline AntilinearOperator compose_pt(const LinearOperator& p, const AntilinearOperator& t,
                                     double tolerance = Tolerances{}.verification) {
    detail::require_same_dim(p.dim(), t.dim(), "compose_pt");
    AntilinearOperator pt = compose(p, t);
    const double mismatch = max_norm(pt.linear_part - compose(t, p).linear_part);
    if (!(mismatch <= tolerance)) throw CompositionMismatchError(mismatch, tolerance);
    return pt;
}

/// ||PT - TP|| for an already-built pair (0 up to rounding for consistent inputs).
inline double pt_tp_mismatch(const LinearOperator& p, const AntilinearOperator& t) {
    return max_norm(compose(p, t).linear_part - compose(t, p).linear_part);
}

/// Builds P, T, PT and the identifications C = P, CPT = T.
inline SymmetrySuite construct_suite(const SpectralDecomposition& s,
                                     const Tolerances& tol = {}) {
    SymmetrySuite suite;
    suite.parity = construct_parity(s);
    suite.time_reversal = construct_time_reversal(s);
    suite.pt = compose_pt(suite.parity, suite.time_reversal, tol.verification);
    suite.charge = suite.parity;        // C = P
    suite.cpt = suite.time_reversal;    // CPT = P^2 T = T
    suite.source_ordering = s.ordering;
    suite.degeneracy_flag = s.degenerate;
    return suite;
}

/// (chi psi_m)^dagger psi_n for linear chi.
inline Complex chi_inner_product(const LinearOperator& chi, const Eigen::VectorXcd& psi_m,
                                 const Eigen::VectorXcd& psi_n) {
    detail::require_same_dim(chi.dim(), psi_m.size(), "chi_inner_product");
    detail::require_same_dim(psi_m.size(), psi_n.size(), "chi_inner_product");
    return chi.apply(psi_m).dot(psi_n); // Eigen's dot conjugates its left argument
}

/// Same with the antilinear action chi psi = U conj(psi).
inline Complex chi_inner_product(const AntilinearOperator& chi, const Eigen::VectorXcd& psi_m,
                                 const Eigen::VectorXcd& psi_n) {
    detail::require_same_dim(chi.dim(), psi_m.size(), "chi_inner_product");
    detail::require_same_dim(psi_m.size(), psi_n.size(), "chi_inner_product");
    return chi.apply(psi_m).dot(psi_n);
}

namespace detail {

inline NormReport norm_report_from_gram(ChiOperator label, const Eigen::MatrixXcd& gram,
                                        double tolerance) {
    NormReport report;
    report.chi = label;
    report.gram_diagonal = gram.diagonal();
    Eigen::MatrixXcd off = gram;
    off.diagonal().setZero();
    report.offdiagonal_max = max_norm(off);
    report.signature.reserve(static_cast<std::size_t>(gram.rows()));
    for (Eigen::Index n = 0; n < gram.rows(); ++n) {
        const Complex c = report.gram_diagonal[n];
        if (std::abs(std::abs(c) - 1.0) > tolerance)
            throw NormAnomalousError(std::string("chi-norm diagonal for ") + to_string(label) +
                                     " at state " + std::to_string(n) + " has magnitude " +
                                     std::to_string(std::abs(c)));
        report.signature.push_back(c.real() >= 0.0 ? 1 : -1);
    }
    return report;
}

} // namespace detail

/// Full chi-Gram diagnostics over the eigenbasis: C_mn = (chi Psi_m)^dagger Psi_n.
/// Throws NormAnomalousError if any diagonal magnitude strays from 1.
inline NormReport chi_norm_signature(ChiOperator label, const LinearOperator& chi,
                                     const SpectralDecomposition& s,
                                     double tolerance = Tolerances{}.verification) {
    detail::require_same_dim(chi.dim(), s.dim(), "chi_norm_signature");
    const Eigen::MatrixXcd gram = (chi.matrix * s.eigenvectors).adjoint() * s.eigenvectors;
    return detail::norm_report_from_gram(label, gram, tolerance);
}

inline NormReport chi_norm_signature(ChiOperator label, const AntilinearOperator& chi,
                                     const SpectralDecomposition& s,
                                     double tolerance = Tolerances{}.verification) {
    detail::require_same_dim(chi.dim(), s.dim(), "chi_norm_signature");
    const Eigen::MatrixXcd gram =
        (chi.linear_part * s.eigenvectors.conjugate()).adjoint() * s.eigenvectors;
    return detail::norm_report_from_gram(label, gram, tolerance);
}

/// Reports for chi in {P, T, PT, CPT}, in that order.
inline std::array<NormReport, 4> suite_norm_reports(const SymmetrySuite& suite,
                                                    const SpectralDecomposition& s,
                                                    double tolerance = Tolerances{}.verification) {
    return {chi_norm_signature(ChiOperator::P, suite.parity, s, tolerance),
            chi_norm_signature(ChiOperator::T, suite.time_reversal, s, tolerance),
            chi_norm_signature(ChiOperator::PT, suite.pt, s, tolerance),
            chi_norm_signature(ChiOperator::CPT, suite.cpt, s, tolerance)};
}

/// What goes wrong if T is declared to be plain conjugation K0:
///   k0_commutator  = ||conj(H) - H||, zero only for real H;
///   pk0_commutator = same contract for the composite P K0;
///   overlap        = (P K0 Psi_0)^T Psi_1, the would-be orthogonality check
///                    written with a transpose, exactly as refuted.
struct NaiveTimeReversalAudit {
    double k0_commutator = 0.0;
    double pk0_commutator = 0.0;
    Complex overlap{0.0, 0.0};
};

inline NaiveTimeReversalAudit naive_time_reversal_audit(const HermitianMatrix& h,
                                                        const SpectralDecomposition& s) {
    if (s.count() < 2)
        throw DimensionMismatchError("naive_time_reversal_audit: needs at least two states");
    const LinearOperator parity = construct_parity(s);
    const AntilinearOperator k0{Eigen::MatrixXcd::Identity(h.dim(), h.dim())};
    const AntilinearOperator pk0 = compose(parity, k0);

    NaiveTimeReversalAudit audit;
    audit.k0_commutator = commutator_residual(k0, h);
    audit.pk0_commutator = commutator_residual(pk0, h);
    const Eigen::VectorXcd transformed = pk0.apply(s.eigenvectors.col(0));
    audit.overlap = (transformed.transpose() * s.eigenvectors.col(1)).value();
    return audit;
}

/// One verified quantity: a residual, the tolerance it was held to, and a name
/// stable enough to key reports on.
struct NamedResidual {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;

    bool pass() const { return value <= tolerance; }
};

struct SuiteVerification {
    std::vector<NamedResidual> residuals;
    std::array<NormReport, 4> norms; // P, T, PT, CPT
    double scale = 1.0;              // max(1, ||H||)

    bool pass() const {
        for (const auto& r : residuals)
            if (!r.pass()) return false;
        return true;
    }
    double worst_ratio() const {
        double worst = 0.0;
        for (const auto& r : residuals)
            if (r.tolerance > 0.0) worst = std::max(worst, r.value / r.tolerance);
        return worst;
    }
};

/// Checks every asserted property of the suite against one Hamiltonian and
/// decomposition: spectral certificates, involutions, commutators, eigenstate
/// actions, PT = TP, the C = P / CPT = T identifications, and the four
/// chi-Gram off-diagonals. Size-dependent residuals are held to
/// tolerance * max(1, ||H||); O(1) quantities to the bare tolerance.
inline SuiteVerification verify_suite(const SymmetrySuite& suite, const HermitianMatrix& h,
                                      const SpectralDecomposition& s, const Tolerances& tol = {}) {
    SuiteVerification v;
    const double scale = h.tolerance_scale();
    const double abs_tol = tol.verification;
    const double scaled_tol = tol.verification * scale;
    v.scale = scale;

    auto add = [&v](std::string name, double value, double tolerance) {
        v.residuals.push_back({std::move(name), value, tolerance});
    };

    add("hermiticity", h.hermiticity_residual(), tol.hermiticity);
    add("orthonormality", verify_orthonormality(s), abs_tol);
    add("completeness", verify_completeness(s), abs_tol);
    add("eigenpair_residual", max_eigenpair_residual(h, s), scaled_tol);

    add("P_involution", involution_residual(suite.parity), scaled_tol);
    add("T_involution", involution_residual(suite.time_reversal), scaled_tol);
    add("PT_involution", involution_residual(suite.pt), scaled_tol);
    add("C_involution", involution_residual(suite.charge), scaled_tol);
    add("CPT_involution", involution_residual(suite.cpt), scaled_tol);

    add("P_commutator", commutator_residual(suite.parity, h), scaled_tol);
    add("T_commutator", commutator_residual(suite.time_reversal, h), scaled_tol);
    add("PT_commutator", commutator_residual(suite.pt, h), scaled_tol);
    add("C_commutator", commutator_residual(suite.charge, h), scaled_tol);
    add("CPT_commutator", commutator_residual(suite.cpt, h), scaled_tol);

    // Eigenstate actions, worst 2-norm over states:
    //   P Psi_n = (-1)^n Psi_n, T Psi_n = Psi_n, PT Psi_n = (-1)^n Psi_n.
    const Eigen::Index n = s.count();
    Eigen::VectorXd alt(n);
    for (Eigen::Index i = 0; i < n; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const Eigen::MatrixXcd signed_vectors = s.eigenvectors * alt.asDiagonal();
    add("P_eigenstate_action",
        (suite.parity.matrix * s.eigenvectors - signed_vectors).colwise().norm().maxCoeff(),
        scaled_tol);
    add("T_eigenstate_action",
        (suite.time_reversal.linear_part * s.eigenvectors.conjugate() - s.eigenvectors)
            .colwise()
            .norm()
            .maxCoeff(),
        scaled_tol);
    add("PT_eigenstate_action",
        (suite.pt.linear_part * s.eigenvectors.conjugate() - signed_vectors)
            .colwise()
            .norm()
            .maxCoeff(),
        scaled_tol);

    add("PT_TP_mismatch", pt_tp_mismatch(suite.parity, suite.time_reversal), abs_tol);
    add("C_equals_P", max_norm(suite.charge.matrix - suite.parity.matrix), 0.0);
    add("CPT_equals_T", max_norm(suite.cpt.linear_part - suite.time_reversal.linear_part), 0.0);

    v.norms = suite_norm_reports(suite, s, abs_tol);
    for (const auto& report : v.norms) {
        double diag_dev = 0.0;
        for (Eigen::Index i = 0; i < report.gram_diagonal.size(); ++i)
            diag_dev = std::max(diag_dev, std::abs(std::abs(report.gram_diagonal[i]) - 1.0));
        add(std::string(to_string(report.chi)) + "_gram_diag_deviation", diag_dev, abs_tol);
        add(std::string(to_string(report.chi)) + "_gram_offdiagonal", report.offdiagonal_max,
            abs_tol);
    }
    return v;
}

} // namespace ptsym
