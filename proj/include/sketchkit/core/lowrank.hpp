#pragma once

#include "sketchkit/core/types.hpp"

#include <variant>

namespace sketchkit {

template <Scalar T>
struct OuterProduct {
    Matrix<T> F;  // n x r
    Matrix<T> G;  // d x r, approximation is F G^*
};

template <Scalar T>
struct SvdFactors {
    Matrix<T> U;
    RealVector sigma;
    Matrix<T> V;
};

template <Scalar T>
struct EigFactors {
    Matrix<T> U;
    RealVector lambda;
};

template <Scalar T>
using LowRankFactorization = std::variant<OuterProduct<T>, SvdFactors<T>, EigFactors<T>>;

template <Scalar T>
Matrix<T> reconstruct(const OuterProduct<T>& f) {
    return f.F * f.G.adjoint();
}

template <Scalar T>
Matrix<T> reconstruct(const SvdFactors<T>& f) {
    return f.U * f.sigma.template cast<T>().asDiagonal() * f.V.adjoint();
}

template <Scalar T>
Matrix<T> reconstruct(const EigFactors<T>& f) {
    return f.U * f.lambda.template cast<T>().asDiagonal() * f.U.adjoint();
}

template <Scalar T>
Matrix<T> reconstruct(const LowRankFactorization<T>& f) {
    return std::visit([](const auto& x) { return reconstruct(x); }, f);
}

template <Scalar T>
index_t rank_of(const OuterProduct<T>& f) {
    return f.F.cols();
}
template <Scalar T>
index_t rank_of(const SvdFactors<T>& f) {
    return f.sigma.size();
}
template <Scalar T>
index_t rank_of(const EigFactors<T>& f) {
    return f.lambda.size();
}

// Checks the declared structure: orthonormal bases, sorted nonnegative
// singular values, nonnegative eigenvalues. Throws NumericalError.
template <Scalar T>
void validate(const LowRankFactorization<T>& f);

}  // namespace sketchkit
