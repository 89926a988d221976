#pragma once

#include "sketchkit/core/lowrank.hpp"
#include "sketchkit/core/sparse.hpp"
#include "sketchkit/sketch/test_matrix.hpp"

#include <cstdint>

namespace sketchkit {

// Randomized SVD: Q = orth(A Omega), B = Q^* A, U = Q svd(B).U.
template <Scalar T>
SvdFactors<T> rsvd(const Matrix<T>& A, const TestMatrix<T>& omega);
template <Scalar T>
SvdFactors<T> rsvd(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega);

struct NystromOptions {
    bool check_psd = true;
    // Each failed Cholesky multiplies the shift by 10.
    int max_shift_retries = 3;
};

// Shifted Nystrom approximation of a psd matrix, returned as U diag(lambda) U^*.
template <Scalar T>
EigFactors<T> nystrom_psd(const Matrix<T>& A, const TestMatrix<T>& omega, const NystromOptions& opts = {});
template <Scalar T>
EigFactors<T> nystrom_psd(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega, const NystromOptions& opts = {});

// Generalized Nystrom A ~ Y (Psi^* Y)^+ (Psi^* A) with Y = A Omega, in
// outer-product form F G^*. Omega is d x k, Psi is n x p.
template <Scalar T>
OuterProduct<T> gen_nystrom_outer(const Matrix<T>& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi);
template <Scalar T>
OuterProduct<T> gen_nystrom_outer(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega,
                                  const TestMatrix<T>& psi);

// Outer-product form from precomputed sketches Y = A Omega and X = A^* Psi.
template <Scalar T>
OuterProduct<T> gen_nystrom_outer_from_sketches(const Matrix<T>& Y, const Matrix<T>& X, const TestMatrix<T>& omega);

// Same approximation in SVD form.
template <Scalar T>
SvdFactors<T> gen_nystrom_svd(const Matrix<T>& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi);
template <Scalar T>
SvdFactors<T> gen_nystrom_svd(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi);

// Draws Omega (d x k) and Psi (n x p) from spec. A wide input (n < d) is
// handled through its adjoint, so sketches are always applied to the tall side.
// p <= 0 selects ceil(1.5 k).
template <Scalar T>
OuterProduct<T> gen_nystrom_auto(const Matrix<T>& A, index_t k, index_t p, const SketchSpec& spec,
                                 std::uint64_t seed);

// X = (Psi^* A)^+ (Psi^* B) with the truncated pseudoinverse.
template <Scalar T>
Matrix<T> sketch_and_solve(const Matrix<T>& A, const Matrix<T>& B, const TestMatrix<T>& psi);
template <Scalar T>
Matrix<T> sketch_and_solve(const SparseMatrixCSR<T>& A, const Matrix<T>& B, const TestMatrix<T>& psi);

struct OrthogonalityStatistic {
    double value;    // ||B (Qperp^* Omega) (Q^* Omega)^+||_F^2, +inf when rank deficient
    bool full_rank;  // whether Q^* Omega has full row rank
};

template <Scalar T>
OrthogonalityStatistic osi_orthogonality_statistic(const Matrix<T>& B, const Matrix<T>& Q, const Matrix<T>& Qperp,
                                                   const TestMatrix<T>& omega);

}  // namespace sketchkit
