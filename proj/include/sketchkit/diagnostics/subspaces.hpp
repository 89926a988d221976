#pragma once

#include "sketchkit/core/sparse.hpp"
#include "sketchkit/core/types.hpp"

#include <cstdint>

namespace sketchkit {

// [e_1 ... e_r], the coordinate subspace used as the adversarial input.
template <Scalar T>
Matrix<T> adversarial_Q(index_t d, index_t r);
template <Scalar T>
SparseMatrixCSR<T> adversarial_Q_sparse(index_t d, index_t r);

// First r columns of the unitary d-point Walsh-Hadamard matrix.
template <Scalar T>
Matrix<T> wht_columns_Q(index_t d, index_t r);

// r Kronecker products of iid real Gaussian factors of length d0, then
// orthonormalized by economy QR.
template <Scalar T>
Matrix<T> kronecker_gaussian_Q(index_t d0, index_t ell, index_t r, std::uint64_t seed);

// Largest squared row norm of an orthonormal Q.
template <Scalar T>
double coherence(const Matrix<T>& Q);

// Frobenius distance of Q^*Q from the identity.
template <Scalar T>
double orthonormality_defect(const Matrix<T>& Q);

}  // namespace sketchkit
