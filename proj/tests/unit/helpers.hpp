#pragma once

#include "sketchkit/core/rng.hpp"
#include "sketchkit/core/types.hpp"

namespace testutil {

using namespace sketchkit;

template <Scalar T>
Matrix<T> random_matrix(index_t r, index_t c, std::uint64_t seed) {
    RngStream rng(seed);
    Matrix<T> M(r, c);
    for (index_t j = 0; j < c; ++j)
        for (index_t i = 0; i < r; ++i) {
            if constexpr (is_complex_v<T>)
                M(i, j) = rng.complex_normal();
            else
                M(i, j) = rng.normal();
        }
    return M;
}

template <Scalar T>
Matrix<T> random_orthonormal(index_t n, index_t r, std::uint64_t seed) {
    Eigen::HouseholderQR<Matrix<T>> qr(random_matrix<T>(n, r, seed));
    return qr.householderQ() * Matrix<T>::Identity(n, r);
}

template <Scalar T>
Matrix<T> random_hermitian(index_t n, std::uint64_t seed) {
    const Matrix<T> G = random_matrix<T>(n, n, seed);
    return (G + G.adjoint()) / 2;
}

template <Scalar T>
Matrix<T> random_psd(index_t n, index_t rank, std::uint64_t seed) {
    const Matrix<T> G = random_matrix<T>(n, rank, seed);
    return G * G.adjoint();
}

}  // namespace testutil
