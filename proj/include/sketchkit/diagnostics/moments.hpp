#pragma once

#include "sketchkit/core/types.hpp"

namespace sketchkit {

// Mom[X](M) = E[(tr(M X))^2] computed by exhaustive enumeration.
template <Scalar T>
struct MomentEnumeration {
    Matrix<T> first;     // E[X]
    double second = 0;   // Mom[X](M)
    long long outcomes = 0;
};

inline constexpr long long moment_enumeration_budget = 10'000'000;

// X = Phi Phi^T for a d x b CountSketch Phi (one Rademacher-signed nonzero per
// row), enumerated over all b^d placements and 2^d signs.
template <Scalar T>
MomentEnumeration<T> countsketch_moment_oracle(index_t d, index_t b, const Matrix<T>& M);

// X = w w^T with w = sqrt(d/xi) sum_{s in S} rho_s e_s, S a uniform xi-subset,
// enumerated over all C(d, xi) supports and 2^xi signs.
template <Scalar T>
MomentEnumeration<T> sparsecol_moment_oracle(index_t d, index_t xi, const Matrix<T>& M);

// Closed forms for self-adjoint M.
// (tr M)^2 + (1/b) sum_{i != j} (|m_ij|^2 + m_ij^2)
template <Scalar T>
double countsketch_moment_exact(index_t b, const Matrix<T>& M);
// (tr M)^2 + (2/b) ||M||_F^2
template <Scalar T>
double countsketch_moment_bound(index_t b, const Matrix<T>& M);
// (d/xi) sum m_ii^2 + 2 ((xi-1)/xi) (tr M)^2 + 4 ((xi-1)/xi) ||M||_F^2, the reference closed form.
template <Scalar T>
double sparsecol_moment_reference(index_t d, index_t xi, const Matrix<T>& M);
// (d/xi) sum m_ii^2 + 2 (tr M)^2 + 4 ||M||_F^2
template <Scalar T>
double sparsecol_moment_bound(index_t d, index_t xi, const Matrix<T>& M);
// (d/xi) sum m_ii^2
//   + d(xi-1)/(xi(d-1)) [sum_{i != t} m_ii m_tt + sum_{i != j} (m_ij^2 + |m_ij|^2)]
template <Scalar T>
double sparsecol_moment_exact(index_t d, index_t xi, const Matrix<T>& M);

}  // namespace sketchkit
