#include "sketchkit/nla/recovery.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/log.hpp"
#include "sketchkit/core/rng.hpp"

#include <cmath>
#include <string>

namespace sketchkit {

template <Scalar T>
Matrix<T> BilinearBasis<T>::gram() const {
    const index_t d = size();
    std::vector<Matrix<T>> m;
    for (index_t j = 0; j < d; ++j) m.push_back(matrix(j));
    Matrix<T> G(d, d);
    for (index_t i = 0; i < d; ++i)
        for (index_t j = 0; j < d; ++j) G(i, j) = (m[std::size_t(i)].array().conjugate() * m[std::size_t(j)].array()).sum();
    return G;
}

template <Scalar T>
Matrix<T> BilinearBasis<T>::combine(const Vector<T>& c) const {
    require_dims(c.size() == size(), "coefficient count must match the basis size");
    Matrix<T> out = Matrix<T>::Zero(rows(), cols());
    for (index_t j = 0; j < size(); ++j) out += c(j) * matrix(j);
    return out;
}

template <Scalar T>
DenseBasis<T>::DenseBasis(std::vector<Matrix<T>> mats) : mats_(std::move(mats)) {
    require_dims(!mats_.empty(), "basis must not be empty");
    for (const auto& m : mats_)
        require_dims(m.rows() == mats_.front().rows() && m.cols() == mats_.front().cols(),
                     "basis matrices must share one shape");
}

template <Scalar T>
T DenseBasis<T>::bilinear(index_t j, const Vector<T>& x, const Vector<T>& y) const {
    return (y.transpose() * (mats_[std::size_t(j)] * x))(0);
}

template <Scalar T>
ToeplitzBasis<T>::ToeplitzBasis(index_t n) : n_(n) {
    require_dims(n >= 1, "Toeplitz basis needs n >= 1");
}

template <Scalar T>
T ToeplitzBasis<T>::bilinear(index_t j, const Vector<T>& x, const Vector<T>& y) const {
    const index_t o = j - (n_ - 1);
    T s(0);
    for (index_t a = std::max<index_t>(0, -o); a < std::min(n_, n_ - o); ++a) s += y(a) * x(a + o);
    return s;
}

template <Scalar T>
Matrix<T> ToeplitzBasis<T>::matrix(index_t j) const {
    const index_t o = j - (n_ - 1);
    Matrix<T> M = Matrix<T>::Zero(n_, n_);
    for (index_t a = std::max<index_t>(0, -o); a < std::min(n_, n_ - o); ++a) M(a, a + o) = T(1);
    return M;
}

template <Scalar T>
Matrix<T> ToeplitzBasis<T>::gram() const {
    Matrix<T> G = Matrix<T>::Zero(size(), size());
    for (index_t j = 0; j < size(); ++j) G(j, j) = T(double(n_ - std::abs(j - (n_ - 1))));
    return G;
}

template <Scalar T>
Matrix<T> ToeplitzBasis<T>::combine(const Vector<T>& c) const {
    require_dims(c.size() == size(), "coefficient count must match the basis size");
    Matrix<T> M(n_, n_);
    for (index_t a = 0; a < n_; ++a)
        for (index_t b = 0; b < n_; ++b) M(a, b) = c(b - a + n_ - 1);
    return M;
}

template <Scalar T>
Matrix<T> ToeplitzBasis<T>::project(const Matrix<T>& B) const {
    require_dims(B.rows() == n_ && B.cols() == n_, "projection needs an n x n matrix");
    Vector<T> c = Vector<T>::Zero(size());
    for (index_t a = 0; a < n_; ++a)
        for (index_t b = 0; b < n_; ++b) c(b - a + n_ - 1) += B(a, b);
    for (index_t j = 0; j < size(); ++j) c(j) /= double(n_ - std::abs(j - (n_ - 1)));
    return combine(c);
}

template <Scalar T>
BilinearOracle<T> bilinear_oracle(const Matrix<T>& B) {
    return [B](const Vector<T>& x, const Vector<T>& y) { return T((y.transpose() * (B * x))(0)); };
}

template <Scalar T>
RecoveryResult<T> matrix_recovery(const BilinearOracle<T>& query, const BilinearBasis<T>& basis, index_t p,
                                  std::uint64_t seed) {
    const index_t d = basis.size();
    if (p < d) throw PreconditionError("matrix_recovery needs p >= d");
    RecoveryResult<T> out;
    const RealVector gram_ev = eigvalsh(basis.gram());
    const double top = gram_ev.size() ? gram_ev.maxCoeff() : 0.0;
    index_t rank = 0;
    for (index_t i = 0; i < gram_ev.size(); ++i)
        if (gram_ev(i) > 1e-12 * top) ++rank;
    if (rank < d) {
        out.gram_deficient = true;
        warn("matrix_recovery: basis Gram matrix has rank " + std::to_string(rank) + " < " + std::to_string(d));
    }
    const RngStream root(seed);
    Matrix<T> F(p, d);
    Matrix<T> g(p, 1);
    for (index_t i = 0; i < p; ++i) {
        RngStream rng = root.child(std::uint64_t(i));
        Vector<T> x(basis.cols()), y(basis.rows());
        for (index_t a = 0; a < x.size(); ++a) {
            if constexpr (is_complex_v<T>)
                x(a) = rng.complex_normal();
            else
                x(a) = rng.normal();
        }
        for (index_t a = 0; a < y.size(); ++a) {
            if constexpr (is_complex_v<T>)
                y(a) = rng.complex_normal();
            else
                y(a) = rng.normal();
        }
        for (index_t j = 0; j < d; ++j) F(i, j) = basis.bilinear(j, x, y);
        g(i, 0) = query(x, y);
        ++out.queries;
    }
    out.coefficients = truncated_pinv_apply(F, g).col(0);
    out.estimate = basis.combine(out.coefficients);
    return out;
}

#define SKETCHKIT_INSTANTIATE(T)                                                                               \
    template class BilinearBasis<T>;                                                                           \
    template class DenseBasis<T>;                                                                              \
    template class ToeplitzBasis<T>;                                                                           \
    template BilinearOracle<T> bilinear_oracle(const Matrix<T>&);                                              \
    template RecoveryResult<T> matrix_recovery(const BilinearOracle<T>&, const BilinearBasis<T>&, index_t,     \
                                               std::uint64_t);

SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)

}  // namespace sketchkit
