#include "sketchkit/nla/algorithms.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/rng.hpp"

#include <cmath>
#include <string>

namespace sketchkit {

namespace {

template <Scalar T>
Matrix<T> adjoint_times(const Matrix<T>& Q, const Matrix<T>& A) {
    return Q.adjoint() * A;
}
template <Scalar T>
Matrix<T> adjoint_times(const Matrix<T>& Q, const SparseMatrixCSR<T>& A) {
    return A.adjoint_multiply(Q).adjoint();
}

// A^* Psi
template <Scalar T>
Matrix<T> adjoint_sketch(const Matrix<T>& A, const TestMatrix<T>& psi) {
    return psi.apply_adjoint(A).adjoint();
}
template <Scalar T>
Matrix<T> adjoint_sketch(const SparseMatrixCSR<T>& A, const TestMatrix<T>& psi) {
    return psi.apply_right(A.adjoint());
}

template <Scalar T>
Vector<T> times(const Matrix<T>& A, const Vector<T>& x) {
    return A * x;
}
template <Scalar T>
Vector<T> times(const SparseMatrixCSR<T>& A, const Vector<T>& x) {
    return A.multiply(x);
}

template <Scalar T>
double frobenius(const Matrix<T>& A) {
    return A.norm();
}
template <Scalar T>
double frobenius(const SparseMatrixCSR<T>& A) {
    return A.frobenius_norm();
}

template <Scalar T>
Vector<T> gaussian_vector(index_t n, RngStream& rng) {
    Vector<T> x(n);
    for (index_t i = 0; i < n; ++i) {
        if constexpr (is_complex_v<T>)
            x(i) = rng.complex_normal();
        else
            x(i) = rng.normal();
    }
    return x;
}

// Self-adjointness and positivity checked on sampled quadratic forms.
template <Scalar T, class Op>
void check_psd(const Op& A) {
    const double tol = 1e-8 * frobenius<T>(A);
    RngStream rng(0x9d5c4ec4ULL);
    const index_t n = A.rows();
    for (int t = 0; t < 10; ++t) {
        const Vector<T> x = gaussian_vector<T>(n, rng);
        const Vector<T> y = gaussian_vector<T>(n, rng);
        const Vector<T> Ax = times(A, x);
        const Vector<T> Ay = times(A, y);
        const T q = x.dot(Ax);  // x^* A x
        if (std::abs(y.dot(Ax) - sketchkit::conj(x.dot(Ay))) > tol * x.norm() * y.norm())
            throw PreconditionError("nystrom_psd: input is not self-adjoint");
        if (real_part(q) < -tol * x.squaredNorm())
            throw PreconditionError("nystrom_psd: input is not positive semidefinite");
    }
}

template <Scalar T, class Op>
SvdFactors<T> rsvd_impl(const Op& A, const TestMatrix<T>& omega) {
    const index_t k = omega.cols();
    require_dims(omega.rows() == A.cols(), "rsvd: test matrix rows must match A's columns");
    require_dims(k <= std::min(A.rows(), A.cols()), "rsvd: k must not exceed min(n, d)");
    const Matrix<T> Y = omega.apply_right(A);
    const Matrix<T> Q = orth(Y);
    const Matrix<T> B = adjoint_times(Q, A);
    auto s = svd_econ(B);
    return {Q * s.U, std::move(s.sigma), std::move(s.V)};
}

template <Scalar T, class Op>
EigFactors<T> nystrom_impl(const Op& A, const TestMatrix<T>& omega, const NystromOptions& opts) {
    const index_t n = A.rows();
    require_dims(A.cols() == n, "nystrom_psd: A must be square");
    require_dims(omega.rows() == n, "nystrom_psd: test matrix rows must match A");
    if (opts.check_psd) check_psd<T>(A);
    const Matrix<T> Y = omega.apply_right(A);
    const double normY = spectral_norm_estimate(Y);
    if (normY == 0) return {Matrix<T>(n, 0), RealVector(0)};
    const Matrix<T> Om = omega.materialize();
    double nu = std::sqrt(double(n)) * eps_mach * normY;
    for (int attempt = 0;; ++attempt) {
        const Matrix<T> Ynu = Y + nu * Om;
        Matrix<T> M = omega.apply_adjoint(Ynu);
        M = (M + M.adjoint()).eval() * 0.5;
        Matrix<T> C;
        try {
            C = cholesky_upper(M);
        } catch (const PositiveDefinitenessError&) {
            if (attempt >= opts.max_shift_retries)
                throw PositiveDefinitenessError("nystrom_psd: Cholesky failed after " +
                                                std::to_string(opts.max_shift_retries) + " shift increases");
            nu *= 10;
            continue;
        }
        // B = Y_nu C^{-1}
        const Matrix<T> B = C.template triangularView<Eigen::Upper>().template solve<Eigen::OnTheRight>(Ynu);
        auto s = svd_econ(B);
        RealVector lambda = (s.sigma.array().square() - nu).max(0.0).matrix();
        return {std::move(s.U), std::move(lambda)};
    }
}

template <Scalar T, class Op>
SvdFactors<T> gen_svd_impl(const Op& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi) {
    const index_t n = A.rows(), d = A.cols();
    const index_t k = omega.cols(), p = psi.cols();
    require_dims(omega.rows() == d && psi.rows() == n, "gen_nystrom_svd: sketch shapes do not match A");
    require_dims(k <= p && p <= std::min(n, d), "gen_nystrom_svd: need k <= p <= min(n, d)");
    const Matrix<T> Y = omega.apply_right(A);
    const Matrix<T> X = adjoint_sketch(A, psi);
    const auto qy = qr_econ(Y);
    const auto qx = qr_econ(X);
    const auto s1 = svd_econ(psi.apply_adjoint(qy.Q));  // Psi^* Q, p x k
    const index_t r = numerical_rank(s1.sigma);
    Matrix<T> W = s1.U.leftCols(r).adjoint() * qx.R.adjoint();
    for (index_t i = 0; i < r; ++i) W.row(i) /= s1.sigma(i);
    const Matrix<T> C = s1.V.leftCols(r) * W;  // k x p
    const auto s = svd_econ(C);
    // Drop numerically zero triplets so a zero input reports rank 0, as the outer form does.
    const index_t q = numerical_rank(s.sigma);
    return {qy.Q * s.U.leftCols(q), s.sigma.head(q), qx.Q * s.V.leftCols(q)};
}

template <Scalar T, class Op>
Matrix<T> solve_impl(const Op& A, const Matrix<T>& B, const TestMatrix<T>& psi) {
    require_dims(A.rows() == B.rows(), "sketch_and_solve: A and B have different row counts");
    require_dims(psi.rows() == A.rows(), "sketch_and_solve: test matrix rows must match A");
    const Matrix<T> As = adjoint_sketch(A, psi).adjoint();
    const Matrix<T> Bs = psi.apply_adjoint(B);
    return truncated_pinv_apply(As, Bs);
}

}  // namespace

template <Scalar T>
SvdFactors<T> rsvd(const Matrix<T>& A, const TestMatrix<T>& omega) {
    return rsvd_impl(A, omega);
}
template <Scalar T>
SvdFactors<T> rsvd(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega) {
    return rsvd_impl(A, omega);
}

template <Scalar T>
EigFactors<T> nystrom_psd(const Matrix<T>& A, const TestMatrix<T>& omega, const NystromOptions& opts) {
    return nystrom_impl(A, omega, opts);
}
template <Scalar T>
EigFactors<T> nystrom_psd(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega, const NystromOptions& opts) {
    return nystrom_impl(A, omega, opts);
}

template <Scalar T>
OuterProduct<T> gen_nystrom_outer_from_sketches(const Matrix<T>& Y, const Matrix<T>& X, const TestMatrix<T>& omega) {
    require_dims(X.rows() == omega.rows(), "gen_nystrom_outer: X rows must match Omega rows");
    require_dims(Y.cols() == omega.cols(), "gen_nystrom_outer: Y columns must match Omega columns");
    const Matrix<T> core = omega.apply_right(Matrix<T>(X.adjoint()));  // X^* Omega = Psi^* Y, p x k
    const auto s = svd_econ(core);
    const index_t r = numerical_rank(s.sigma);
    Matrix<T> V = s.V.leftCols(r);
    for (index_t i = 0; i < r; ++i) V.col(i) /= s.sigma(i);
    return {Y * V, X * s.U.leftCols(r)};
}

template <Scalar T>
OuterProduct<T> gen_nystrom_outer(const Matrix<T>& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi) {
    require_dims(omega.rows() == A.cols() && psi.rows() == A.rows(), "gen_nystrom_outer: sketch shapes do not match A");
    require_dims(omega.cols() <= psi.cols() && psi.cols() <= std::min(A.rows(), A.cols()),
                 "gen_nystrom_outer: need k <= p <= min(n, d)");
    return gen_nystrom_outer_from_sketches<T>(omega.apply_right(A), adjoint_sketch(A, psi), omega);
}
template <Scalar T>
OuterProduct<T> gen_nystrom_outer(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega,
                                  const TestMatrix<T>& psi) {
    require_dims(omega.rows() == A.cols() && psi.rows() == A.rows(), "gen_nystrom_outer: sketch shapes do not match A");
    require_dims(omega.cols() <= psi.cols() && psi.cols() <= std::min(A.rows(), A.cols()),
                 "gen_nystrom_outer: need k <= p <= min(n, d)");
    return gen_nystrom_outer_from_sketches<T>(omega.apply_right(A), adjoint_sketch(A, psi), omega);
}

template <Scalar T>
SvdFactors<T> gen_nystrom_svd(const Matrix<T>& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi) {
    return gen_svd_impl(A, omega, psi);
}
template <Scalar T>
SvdFactors<T> gen_nystrom_svd(const SparseMatrixCSR<T>& A, const TestMatrix<T>& omega, const TestMatrix<T>& psi) {
    return gen_svd_impl(A, omega, psi);
}

template <Scalar T>
OuterProduct<T> gen_nystrom_auto(const Matrix<T>& A, index_t k, index_t p, const SketchSpec& spec,
                                 std::uint64_t seed) {
    if (p <= 0) p = index_t(std::ceil(1.5 * double(k)));
    const RngStream root(seed);
    if (A.rows() < A.cols()) {
        const Matrix<T> At = A.adjoint();
        const auto omega = make_test_matrix<T>(spec, At.cols(), k, root.child(0).next_u64());
        const auto psi = make_test_matrix<T>(spec, At.rows(), p, root.child(1).next_u64());
        auto f = gen_nystrom_outer<T>(At, *omega, *psi);
        return {std::move(f.G), std::move(f.F)};
    }
    const auto omega = make_test_matrix<T>(spec, A.cols(), k, root.child(0).next_u64());
    const auto psi = make_test_matrix<T>(spec, A.rows(), p, root.child(1).next_u64());
    return gen_nystrom_outer<T>(A, *omega, *psi);
}

template <Scalar T>
Matrix<T> sketch_and_solve(const Matrix<T>& A, const Matrix<T>& B, const TestMatrix<T>& psi) {
    return solve_impl(A, B, psi);
}
template <Scalar T>
Matrix<T> sketch_and_solve(const SparseMatrixCSR<T>& A, const Matrix<T>& B, const TestMatrix<T>& psi) {
    return solve_impl(A, B, psi);
}

template <Scalar T>
OrthogonalityStatistic osi_orthogonality_statistic(const Matrix<T>& B, const Matrix<T>& Q, const Matrix<T>& Qperp,
                                                   const TestMatrix<T>& omega) {
    require_dims(Q.rows() == omega.rows() && Qperp.rows() == omega.rows(), "Q and Qperp must have d rows");
    require_dims(B.cols() == Qperp.cols(), "B must have as many columns as Qperp");
    const double cross = (Q.adjoint() * Qperp).norm();
    if (cross > 1e-10) throw PreconditionError("Q and Qperp are not orthogonal");
    const Matrix<T> S1 = omega.apply_adjoint(Q).adjoint();      // r x k
    const Matrix<T> S2 = omega.apply_adjoint(Qperp).adjoint();  // s x k
    const auto s = svd_econ(S1);
    if (numerical_rank(s.sigma) < Q.cols()) return {std::numeric_limits<double>::infinity(), false};
    // (S1)^+ = V Sigma^{-1} U^*
    Matrix<T> V = s.V;
    for (index_t i = 0; i < V.cols(); ++i) V.col(i) /= s.sigma(i);
    const Matrix<T> P = (B * S2) * V * s.U.adjoint();
    return {P.squaredNorm(), true};
}

#define SKETCHKIT_INSTANTIATE(T)                                                                                   \
    template SvdFactors<T> rsvd(const Matrix<T>&, const TestMatrix<T>&);                                           \
    template SvdFactors<T> rsvd(const SparseMatrixCSR<T>&, const TestMatrix<T>&);                                  \
    template EigFactors<T> nystrom_psd(const Matrix<T>&, const TestMatrix<T>&, const NystromOptions&);             \
    template EigFactors<T> nystrom_psd(const SparseMatrixCSR<T>&, const TestMatrix<T>&, const NystromOptions&);    \
    template OuterProduct<T> gen_nystrom_outer_from_sketches(const Matrix<T>&, const Matrix<T>&,                   \
                                                             const TestMatrix<T>&);                                \
    template OuterProduct<T> gen_nystrom_outer(const Matrix<T>&, const TestMatrix<T>&, const TestMatrix<T>&);      \
    template OuterProduct<T> gen_nystrom_outer(const SparseMatrixCSR<T>&, const TestMatrix<T>&,                    \
                                               const TestMatrix<T>&);                                              \
    template SvdFactors<T> gen_nystrom_svd(const Matrix<T>&, const TestMatrix<T>&, const TestMatrix<T>&);          \
    template SvdFactors<T> gen_nystrom_svd(const SparseMatrixCSR<T>&, const TestMatrix<T>&, const TestMatrix<T>&); \
    template OuterProduct<T> gen_nystrom_auto(const Matrix<T>&, index_t, index_t, const SketchSpec&, std::uint64_t); \
    template Matrix<T> sketch_and_solve(const Matrix<T>&, const Matrix<T>&, const TestMatrix<T>&);                 \
    template Matrix<T> sketch_and_solve(const SparseMatrixCSR<T>&, const Matrix<T>&, const TestMatrix<T>&);        \
    template OrthogonalityStatistic osi_orthogonality_statistic(const Matrix<T>&, const Matrix<T>&,                \
                                                                const Matrix<T>&, const TestMatrix<T>&);

SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)

}  // namespace sketchkit
