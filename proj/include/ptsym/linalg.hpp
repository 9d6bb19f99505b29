#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "ptsym/errors.hpp"

namespace ptsym {

using Complex = std::complex<double>;

/// Max-norm: largest |entry|. The norm used for every residual in this library.
template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (!all_finite(m)) throw NonFiniteError(std::string(what) + " contains NaN or Inf entries");
}

/// Uniform double in [0,1) from the top 53 bits of the generator output.
/// Kept explicit (rather than std::uniform_real_distribution) so that seeded
/// streams are identical across standard library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on the explicit uniform stream.
inline double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform_unit(rng);
    while (u1 <= 0.0) u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Dense GUE-style random Hermitian matrix: H = (A + A^dagger)/2 with
/// iid standard complex normal entries of A. Deterministic for a fixed seed.
inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = Complex(standard_normal(rng), standard_normal(rng));
    return 0.5 * (a + a.adjoint()).eval();
}

inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_hermitian(n, rng);
}

/// Random unit phases e^{i 2 pi u}, one per column, for phase-robustness checks.
inline Eigen::VectorXcd random_unit_phases(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::VectorXcd phases(n);
    for (Eigen::Index i = 0; i < n; ++i)
        phases[i] = std::polar(1.0, 2.0 * M_PI * uniform_unit(rng));
    return phases;
}

} // namespace ptsym
