#pragma once

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/types.hpp"

namespace sketchkit {

template <Scalar T>
struct QrResult {
    Matrix<T> Q;
    Matrix<T> R;
};

template <Scalar T>
struct SvdResult {
    Matrix<T> U;
    RealVector sigma;  // nonincreasing
    Matrix<T> V;
};

template <Scalar T>
struct EighResult {
    RealVector lambda;  // nondecreasing
    Matrix<T> U;
};

// Householder QR, economy size. Requires rows >= cols.
template <Scalar T>
QrResult<T> qr_econ(const Matrix<T>& M);

// Orthonormal basis for range(M); columns past the numerical rank are dropped.
template <Scalar T>
Matrix<T> orth(const Matrix<T>& M);

template <Scalar T>
SvdResult<T> svd_econ(const Matrix<T>& M);

template <Scalar T>
RealVector singular_values(const Matrix<T>& M);

// Upper triangular C with M = C^* C. Throws PositiveDefinitenessError.
template <Scalar T>
Matrix<T> cholesky_upper(const Matrix<T>& M);

// Number of singular values above rel_tol * sigma_1.
index_t numerical_rank(const RealVector& sigma, double rel_tol = 5 * eps_mach);

// V_r Sigma_r^{-1} U_r^* B with the rank cut at rel_tol * sigma_1.
template <Scalar T>
Matrix<T> truncated_pinv_apply(const Matrix<T>& M, const Matrix<T>& B, double rel_tol = 5 * eps_mach);

template <Scalar T>
EighResult<T> eigh(const Matrix<T>& M);

template <Scalar T>
RealVector eigvalsh(const Matrix<T>& M);

// Spectral norm estimate from power iteration on M^* M.
template <Scalar T>
double spectral_norm_estimate(const Matrix<T>& M, int iterations = 20);

// Sum of singular values.
template <Scalar T>
double nuclear_norm(const Matrix<T>& M);

}  // namespace sketchkit
