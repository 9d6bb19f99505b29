#pragma once

// Spectral foundation: Hermiticity checking, eigendecomposition with explicit
// ordering/phase conventions, and completeness/orthonormality certificates.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "ptsym/errors.hpp"
#include "ptsym/linalg.hpp"

namespace ptsym {

/// All tolerances are absolute in max-norm. Residuals that grow with the
/// Hamiltonian (eigenpair residual, commutators, involutions, eigenstate
/// actions) are compared against tolerance * max(1, ||H||).
struct Tolerances {
    double hermiticity = 1e-10;
    double verification = 1e-10;
    double degeneracy_gap = 1e-8; // relative: gap below this * max(1,||H||) flags degeneracy
    double phase_floor = 1e-8;    // anchor component must exceed this * ||psi||
};

/// Ascending is the default label order (ground state first). PaperTwoByTwo
/// labels the largest eigenvalue n = 0, i.e. descending; it exists so the
/// 2x2 demo reproduces its reference matrices literally. Every invariant
/// holds under either labeling; only the overall sign of P flips.
enum class EigenvalueOrdering { Ascending, PaperTwoByTwo };

enum class PhaseConvention { FirstComponentRealPositive, Explicit };

class HermitianMatrix {
public:
    const Eigen::MatrixXcd& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    double hermiticity_residual() const { return residual_; }
    /// max-norm of the matrix.
    double norm() const { return norm_; }
    /// max(1, ||H||), the factor applied to size-dependent tolerances.
    double tolerance_scale() const { return std::max(1.0, norm_); }

    friend HermitianMatrix check_hermitian(Eigen::MatrixXcd m, double tolerance);

private:
    HermitianMatrix(Eigen::MatrixXcd m, double residual, double norm)
        : m_(std::move(m)), residual_(residual), norm_(norm) {}

    Eigen::MatrixXcd m_;
    double residual_;
    double norm_;
};

/// Gatekeeper for everything downstream: accepts a square finite matrix whose
/// max-norm distance from its own adjoint is within tolerance.
inline HermitianMatrix check_hermitian(Eigen::MatrixXcd m, double tolerance = Tolerances{}.hermiticity) {
    if (m.rows() != m.cols())
        throw DimensionMismatchError("check_hermitian: matrix must be square");
    if (m.rows() == 0) throw DimensionMismatchError("check_hermitian: matrix is empty");
    require_finite(m, "matrix");
    const double residual = max_norm(m - m.adjoint());
    if (!(residual <= tolerance)) throw NotHermitianError(residual, tolerance);
    const double norm = max_norm(m);
    return HermitianMatrix(std::move(m), residual, norm);
}

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // E_n, real by solver contract
    Eigen::MatrixXcd eigenvectors; // column n is Psi_n, unit norm
    EigenvalueOrdering ordering = EigenvalueOrdering::Ascending;
    PhaseConvention phase_convention = PhaseConvention::FirstComponentRealPositive;
    bool degenerate = false; // some gap fell below the degeneracy threshold
    double min_gap = std::numeric_limits<double>::infinity();

    Eigen::Index dim() const { return eigenvectors.rows(); }
    Eigen::Index count() const { return eigenvectors.cols(); }
};

/// Max deviation of the Gram matrix V^dagger V from the identity.
inline double verify_orthonormality(const Eigen::MatrixXcd& vectors) {
    const Eigen::Index k = vectors.cols();
    return max_norm(vectors.adjoint() * vectors - Eigen::MatrixXcd::Identity(k, k));
}

inline double verify_orthonormality(const SpectralDecomposition& s) {
    return verify_orthonormality(s.eigenvectors);
}

/// Max-norm of sum_n Psi_n Psi_n^dagger - 1.
inline double verify_completeness(const Eigen::MatrixXcd& vectors) {
    const Eigen::Index n = vectors.rows();
    return max_norm(vectors * vectors.adjoint() - Eigen::MatrixXcd::Identity(n, n));
}

inline double verify_completeness(const SpectralDecomposition& s) {
    return verify_completeness(s.eigenvectors);
}

/// Worst eigenpair residual max_n ||H Psi_n - E_n Psi_n||_2.
inline double max_eigenpair_residual(const HermitianMatrix& h, const SpectralDecomposition& s) {
    if (h.dim() != s.dim())
        throw DimensionMismatchError("max_eigenpair_residual: dimension mismatch");
    const Eigen::MatrixXcd defect =
        h.matrix() * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal();
    return defect.colwise().norm().maxCoeff();
}

/// Smallest |E_i - E_j| over distinct consecutive levels of the sorted spectrum.
inline double min_eigenvalue_gap(const Eigen::VectorXd& eigenvalues) {
    if (eigenvalues.size() < 2) return std::numeric_limits<double>::infinity();
    Eigen::VectorXd sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < sorted.size(); ++i)
        gap = std::min(gap, sorted[i] - sorted[i - 1]);
    return gap;
}

namespace detail {

inline void apply_ordering(Eigen::VectorXd& values, Eigen::MatrixXcd& vectors,
                           EigenvalueOrdering ordering) {
    if (ordering == EigenvalueOrdering::PaperTwoByTwo) {
        values.reverseInPlace();
        vectors = vectors.rowwise().reverse().eval();
    }
}

/// Rotates one column so its anchor component (first one above the phase
/// floor) is real and positive. Exactly idempotent: an already-canonical
/// column is returned untouched, and the anchor of a rotated column is
/// stored as its modulus (imaginary part exactly zero).
inline void canonicalize_column(Eigen::Ref<Eigen::VectorXcd> column, double phase_floor) {
    const double norm = column.norm();
    if (norm <= 1e-12) throw ZeroVectorError("canonicalize_phases: eigenvector has zero norm");
    Eigen::Index anchor = -1;
    for (Eigen::Index i = 0; i < column.size(); ++i) {
        if (std::abs(column[i]) > phase_floor * norm) {
            anchor = i;
            break;
        }
    }
    if (anchor < 0) throw ZeroVectorError("canonicalize_phases: no component above phase floor");
    const Complex value = column[anchor];
    if (value.imag() == 0.0 && value.real() > 0.0) return;
    const double magnitude = std::abs(value);
    column *= std::conj(value) / magnitude;
    column[anchor] = Complex(magnitude, 0.0);
}

} // namespace detail

/// Returns a copy of the decomposition with every eigenvector rescaled by a
/// unit phase so that its first component above the phase floor is real and
/// positive. Idempotent; preserves all residuals (a unit phase drops out of
/// every outer product with a matching conjugate).
inline SpectralDecomposition canonicalize_phases(SpectralDecomposition s,
                                                 double phase_floor = Tolerances{}.phase_floor) {
    for (Eigen::Index n = 0; n < s.eigenvectors.cols(); ++n)
        detail::canonicalize_column(s.eigenvectors.col(n), phase_floor);
    s.phase_convention = PhaseConvention::FirstComponentRealPositive;
    return s;
}

/// Full eigendecomposition of a Hermitian matrix with the requested label
/// order and canonical phases. Postconditions (verified, ConvergenceError on
/// failure): H Psi_n = E_n Psi_n, orthonormality and completeness, all within
/// tolerance * max(1, ||H||).
inline SpectralDecomposition eigendecompose(const HermitianMatrix& h,
                                            EigenvalueOrdering ordering = EigenvalueOrdering::Ascending,
                                            const Tolerances& tol = {}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigendecompose: solver did not converge");

    SpectralDecomposition s;
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors();
    detail::apply_ordering(s.eigenvalues, s.eigenvectors, ordering);
    s.ordering = ordering;

    const double scale = h.tolerance_scale();
    const double residual = max_eigenpair_residual(h, s);
    if (!(residual <= tol.verification * scale))
        throw ConvergenceError("eigendecompose: eigenpair residual " + std::to_string(residual) +
                               " exceeds contract");

    s.min_gap = min_eigenvalue_gap(s.eigenvalues);
    s.degenerate = s.min_gap < tol.degeneracy_gap * scale;
    return canonicalize_phases(std::move(s), tol.phase_floor);
}

/// Wraps caller-supplied eigenpairs (e.g. closed-form ones) after validating
/// orthonormality, completeness, label order and, when the Hamiltonian is
/// given, the eigenpair residual. Phases are kept exactly as supplied when
/// convention == Explicit.
inline SpectralDecomposition
from_explicit(Eigen::VectorXd eigenvalues, Eigen::MatrixXcd eigenvectors,
              EigenvalueOrdering ordering, const HermitianMatrix* h = nullptr,
              PhaseConvention convention = PhaseConvention::Explicit, const Tolerances& tol = {}) {
    if (eigenvectors.rows() != eigenvectors.cols())
        throw DimensionMismatchError("from_explicit: eigenvector matrix must be square");
    if (eigenvalues.size() != eigenvectors.cols())
        throw DimensionMismatchError("from_explicit: eigenvalue count mismatch");
    require_finite(eigenvalues, "eigenvalues");
    require_finite(eigenvectors, "eigenvectors");

    SpectralDecomposition s;
    s.eigenvalues = std::move(eigenvalues);
    s.eigenvectors = std::move(eigenvectors);
    s.ordering = ordering;
    s.phase_convention = convention;

    const double orth = verify_orthonormality(s);
    if (!(orth <= tol.verification))
        throw ConvergenceError("from_explicit: eigenvectors not orthonormal, deviation " +
                               std::to_string(orth));
    const double comp = verify_completeness(s);
    if (!(comp <= tol.verification))
        throw ConvergenceError("from_explicit: eigenvectors not complete, deviation " +
                               std::to_string(comp));

    double scale = 1.0;
    if (h != nullptr) {
        scale = h->tolerance_scale();
        const double residual = max_eigenpair_residual(*h, s);
        if (!(residual <= tol.verification * scale))
            throw ConvergenceError("from_explicit: eigenpair residual " + std::to_string(residual) +
                                   " exceeds tolerance");
    } else {
        scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
    }

    // Label order must match the tag. Slack equal to the degeneracy threshold:
    // numerically degenerate pairs may micro-violate monotonicity.
    const double slack = tol.degeneracy_gap * scale;
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) {
        const double step = s.eigenvalues[i] - s.eigenvalues[i - 1];
        const bool ok = ordering == EigenvalueOrdering::Ascending ? step >= -slack : step <= slack;
        if (!ok)
            throw ConvergenceError("from_explicit: eigenvalues do not match the declared ordering");
    }

    s.min_gap = min_eigenvalue_gap(s.eigenvalues);
    s.degenerate = s.min_gap < tol.degeneracy_gap * scale;
    if (convention == PhaseConvention::FirstComponentRealPositive)
        return canonicalize_phases(std::move(s), tol.phase_floor);
    return s;
}

} // namespace ptsym
