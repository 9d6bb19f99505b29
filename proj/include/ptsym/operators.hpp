#pragma once

// Linear and antilinear operators on C^N.
//
// An antilinear operator is stored by its linear part U and acts as
// psi -> U conj(psi) (conjugate first, then multiply). Composition rules,
// with K0 denoting entrywise conjugation:
//   (A1 A2) psi = U1 conj(U2) psi          -- linear
//   (L  A ) psi = L U conj(psi)            -- antilinear, linear part L U
//   (A  L ) psi = U conj(L) conj(psi)      -- antilinear, linear part U conj(L)

#include <Eigen/Dense>

#include "ptsym/errors.hpp"
#include "ptsym/linalg.hpp"
#include "ptsym/spectral.hpp"

namespace ptsym {

struct LinearOperator {
    Eigen::MatrixXcd matrix;

    Eigen::Index dim() const { return matrix.rows(); }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const { return matrix * psi; }
};

struct AntilinearOperator {
    Eigen::MatrixXcd linear_part;

    Eigen::Index dim() const { return linear_part.rows(); }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const {
        return linear_part * psi.conjugate();
    }
};

namespace detail {
inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) throw DimensionMismatchError(std::string(what) + ": dimension mismatch");
}
} // namespace detail

inline LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    detail::require_same_dim(a.dim(), b.dim(), "compose");
    return {a.matrix * b.matrix};
}

inline LinearOperator compose(const AntilinearOperator& a, const AntilinearOperator& b) {
    detail::require_same_dim(a.dim(), b.dim(), "compose");
    return {a.linear_part * b.linear_part.conjugate()};
}

inline AntilinearOperator compose(const LinearOperator& l, const AntilinearOperator& a) {
    detail::require_same_dim(l.dim(), a.dim(), "compose");
    return {l.matrix * a.linear_part};
}

inline AntilinearOperator compose(const AntilinearOperator& a, const LinearOperator& l) {
    detail::require_same_dim(a.dim(), l.dim(), "compose");
    return {a.linear_part * l.matrix.conjugate()};
}

/// ||M^2 - 1|| in max-norm.
inline double involution_residual(const LinearOperator& op) {
    const Eigen::Index n = op.dim();
    return max_norm(op.matrix * op.matrix - Eigen::MatrixXcd::Identity(n, n));
}

/// ||U conj(U) - 1||: the square of an antilinear operator is the linear
/// operator U conj(U).
inline double involution_residual(const AntilinearOperator& op) {
    const Eigen::Index n = op.dim();
    return max_norm(op.linear_part * op.linear_part.conjugate() -
                    Eigen::MatrixXcd::Identity(n, n));
}

/// ||PH - HP||.
inline double commutator_residual(const LinearOperator& op, const HermitianMatrix& h) {
    detail::require_same_dim(op.dim(), h.dim(), "commutator_residual");
    return max_norm(op.matrix * h.matrix() - h.matrix() * op.matrix);
}

/// ||U conj(H) - H U||: (T H) psi = U conj(H) conj(psi), so T commutes with H
/// exactly when U conj(H) = H U.
inline double commutator_residual(const AntilinearOperator& op, const HermitianMatrix& h) {
    detail::require_same_dim(op.dim(), h.dim(), "commutator_residual");
    return max_norm(op.linear_part * h.matrix().conjugate() - h.matrix() * op.linear_part);
}

} // namespace ptsym
