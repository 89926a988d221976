#include "sketchkit/core/linalg.hpp"

#include "sketchkit/core/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace sketchkit {

template <Scalar T>
QrResult<T> qr_econ(const Matrix<T>& M) {
    const index_t n = M.rows(), k = M.cols();
    require_dims(n >= k, "qr_econ requires rows >= cols");
    Eigen::HouseholderQR<Matrix<T>> qr(M);
    QrResult<T> out;
    out.Q = qr.householderQ() * Matrix<T>::Identity(n, k);
    out.R = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    return out;
}

template <Scalar T>
Matrix<T> orth(const Matrix<T>& M) {
    if (M.cols() == 0 || M.rows() == 0) return Matrix<T>(M.rows(), 0);
    Eigen::ColPivHouseholderQR<Matrix<T>> qr(M);
    qr.setThreshold(5 * eps_mach * double(std::max(M.rows(), M.cols())));
    const index_t r = qr.rank();
    return qr.householderQ() * Matrix<T>::Identity(M.rows(), r);
}

template <Scalar T>
SvdResult<T> svd_econ(const Matrix<T>& M) {
    if (!all_finite(M)) throw NumericalError("svd_econ: nonfinite input");
    SvdResult<T> out;
    if (M.size() == 0) {
        const index_t m = std::min(M.rows(), M.cols());
        out.U = Matrix<T>::Zero(M.rows(), m);
        out.V = Matrix<T>::Zero(M.cols(), m);
        out.sigma = RealVector::Zero(m);
        return out;
    }
    Eigen::BDCSVD<Matrix<T>> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.U = svd.matrixU();
    out.sigma = svd.singularValues();
    out.V = svd.matrixV();
    return out;
}

template <Scalar T>
RealVector singular_values(const Matrix<T>& M) {
    if (M.size() == 0) return RealVector::Zero(std::min(M.rows(), M.cols()));
    Eigen::BDCSVD<Matrix<T>> svd(M);
    return svd.singularValues();
}

template <Scalar T>
Matrix<T> cholesky_upper(const Matrix<T>& M) {
    require_dims(M.rows() == M.cols(), "cholesky_upper requires a square matrix");
    const double scale = std::max(M.norm(), 1e-300);
    if ((M - M.adjoint()).norm() > 1e-10 * scale) throw PreconditionError("cholesky_upper: matrix is not self-adjoint");
    Eigen::LLT<Matrix<T>> llt(M);
    if (llt.info() != Eigen::Success) throw PositiveDefinitenessError("cholesky_upper: non-positive pivot");
    Matrix<T> C = llt.matrixU();
    return C;
}

index_t numerical_rank(const RealVector& sigma, double rel_tol) {
    if (sigma.size() == 0 || !(sigma(0) > 0)) return 0;
    const double cut = rel_tol * sigma(0);
    index_t r = 0;
    while (r < sigma.size() && sigma(r) > cut) ++r;
    return r;
}

template <Scalar T>
Matrix<T> truncated_pinv_apply(const Matrix<T>& M, const Matrix<T>& B, double rel_tol) {
    require_dims(M.rows() == B.rows(), "truncated_pinv_apply: row counts differ");
    const auto s = svd_econ(M);
    const index_t r = numerical_rank(s.sigma, rel_tol);
    if (r == 0) return Matrix<T>::Zero(M.cols(), B.cols());
    Matrix<T> C = s.U.leftCols(r).adjoint() * B;
    for (index_t i = 0; i < r; ++i) C.row(i) /= s.sigma(i);
    return s.V.leftCols(r) * C;
}

template <Scalar T>
EighResult<T> eigh(const Matrix<T>& M) {
    require_dims(M.rows() == M.cols(), "eigh requires a square matrix");
    Eigen::SelfAdjointEigenSolver<Matrix<T>> es(M);
    if (es.info() != Eigen::Success) throw NumericalError("eigh: no convergence");
    return {es.eigenvalues(), es.eigenvectors()};
}

template <Scalar T>
RealVector eigvalsh(const Matrix<T>& M) {
    require_dims(M.rows() == M.cols(), "eigvalsh requires a square matrix");
    Eigen::SelfAdjointEigenSolver<Matrix<T>> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigvalsh: no convergence");
    return es.eigenvalues();
}

template <Scalar T>
double spectral_norm_estimate(const Matrix<T>& M, int iterations) {
    if (M.size() == 0) return 0.0;
    RngStream rng(0x5eed5eedULL);
    Vector<T> x(M.cols());
    for (index_t i = 0; i < x.size(); ++i) {
        if constexpr (is_complex_v<T>)
            x(i) = rng.complex_normal();
        else
            x(i) = rng.normal();
    }
    double est = 0;
    for (int it = 0; it < iterations; ++it) {
        const double nx = x.norm();
        if (nx == 0) return 0.0;
        x /= nx;
        Vector<T> y = M * x;
        est = y.norm();
        x = M.adjoint() * y;
    }
    return est;
}

template <Scalar T>
double nuclear_norm(const Matrix<T>& M) {
    return singular_values(M).sum();
}

#define SKETCHKIT_INSTANTIATE(T)                                                    \
    template QrResult<T> qr_econ(const Matrix<T>&);                                 \
    template Matrix<T> orth(const Matrix<T>&);                                      \
    template SvdResult<T> svd_econ(const Matrix<T>&);                               \
    template RealVector singular_values(const Matrix<T>&);                          \
    template Matrix<T> cholesky_upper(const Matrix<T>&);                            \
    template Matrix<T> truncated_pinv_apply(const Matrix<T>&, const Matrix<T>&, double); \
    template EighResult<T> eigh(const Matrix<T>&);                                  \
    template RealVector eigvalsh(const Matrix<T>&);                                 \
    template double spectral_norm_estimate(const Matrix<T>&, int);                  \
    template double nuclear_norm(const Matrix<T>&);

SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)

}  // namespace sketchkit
