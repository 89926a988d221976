#include "sketchkit/trace/estimators.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/log.hpp"
#include "sketchkit/core/rng.hpp"
#include "sketchkit/nla/algorithms.hpp"

#include <string>

namespace sketchkit {

namespace {

// sum_j <u_j, v_j> = tr(U^* V)
template <Scalar T>
T trace_of_inner(const Matrix<T>& U, const Matrix<T>& V) {
    return (U.array().conjugate() * V.array()).sum();
}

}  // namespace

template <Scalar T>
T girard_hutchinson(const MatvecOracle<T>& A, index_t t, const TestMatrixFactory<T>& family, std::uint64_t seed) {
    if (t <= 0) throw PreconditionError("girard_hutchinson needs t >= 1");
    const auto omega = family(A.dim(), t, seed);
    const Matrix<T> W = omega->materialize();
    return trace_of_inner<T>(W, A.apply(W));
}

template <Scalar T>
T na_hutch_pp(const MatvecOracle<T>& A, index_t t, const TestMatrixFactory<T>& family, std::uint64_t seed) {
    if (t <= 0) throw PreconditionError("na_hutch_pp needs t >= 1");
    if (t % 6 != 0)
        warn("na_hutch_pp: t = " + std::to_string(t) + " is not divisible by 6; sketch sizes rounded down");
    const index_t n = A.dim();
    const index_t k = t / 6, p = k > 0 ? t / 3 : 0, m = t - k - p;
    const RngStream root(seed);
    T estimate(0);
    Matrix<T> F, G;
    if (k > 0) {
        const auto omega = family(n, k, root.child(0).next_u64());
        const auto psi = family(n, p, root.child(1).next_u64());
        const Matrix<T> Y = A.apply(omega->materialize());
        const Matrix<T> X = A.apply_adjoint(psi->materialize());
        auto f = gen_nystrom_outer_from_sketches<T>(Y, X, *omega);
        F = std::move(f.F);
        G = std::move(f.G);
        estimate += trace_of_inner<T>(G, F);  // tr(F G^*)
    }
    const auto phi = family(n, m, root.child(2).next_u64());
    const Matrix<T> W = phi->materialize();
    T residual = trace_of_inner<T>(W, A.apply(W));
    if (F.cols() > 0) residual -= ((W.adjoint() * F) * (G.adjoint() * W)).trace();
    return estimate + residual;
}

template double girard_hutchinson(const MatvecOracle<double>&, index_t, const TestMatrixFactory<double>&, std::uint64_t);
template cplx girard_hutchinson(const MatvecOracle<cplx>&, index_t, const TestMatrixFactory<cplx>&, std::uint64_t);
template double na_hutch_pp(const MatvecOracle<double>&, index_t, const TestMatrixFactory<double>&, std::uint64_t);
template cplx na_hutch_pp(const MatvecOracle<cplx>&, index_t, const TestMatrixFactory<cplx>&, std::uint64_t);

}  // namespace sketchkit
