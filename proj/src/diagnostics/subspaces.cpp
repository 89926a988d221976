#include "sketchkit/diagnostics/subspaces.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/rng.hpp"
#include "sketchkit/sketch/test_matrix.hpp"
#include "sketchkit/sketch/transforms.hpp"

#include <vector>

namespace sketchkit {

template <Scalar T>
Matrix<T> adversarial_Q(index_t d, index_t r) {
    if (r < 0 || r > d) throw PreconditionError("adversarial_Q requires 0 <= r <= d");
    return Matrix<T>::Identity(d, r);
}

template <Scalar T>
SparseMatrixCSR<T> adversarial_Q_sparse(index_t d, index_t r) {
    if (r < 0 || r > d) throw PreconditionError("adversarial_Q requires 0 <= r <= d");
    std::vector<Triplet<T>> t;
    t.reserve(std::size_t(r));
    for (index_t i = 0; i < r; ++i) t.push_back({i, i, T(1)});
    return SparseMatrixCSR<T>::from_triplets(d, r, std::move(t));
}

template <Scalar T>
Matrix<T> wht_columns_Q(index_t d, index_t r) {
    if (!is_power_of_two(d)) throw PreconditionError("wht_columns_Q requires d a power of two");
    if (r < 0 || r > d) throw PreconditionError("wht_columns_Q requires 0 <= r <= d");
    Matrix<T> Q(d, r);
    for (index_t j = 0; j < r; ++j) Q.col(j) = wht<T>(Vector<T>::Unit(d, j));
    return Q;
}

template <Scalar T>
Matrix<T> kronecker_gaussian_Q(index_t d0, index_t ell, index_t r, std::uint64_t seed) {
    if (d0 < 1 || ell < 1 || r < 1) throw PreconditionError("kronecker_gaussian_Q: d0, ell, r must be positive");
    index_t d = 1;
    for (index_t i = 0; i < ell; ++i) d *= d0;
    if (r > d) throw PreconditionError("kronecker_gaussian_Q requires r <= d0^ell");
    RngStream root(seed);
    Matrix<T> G(d, r);
    for (index_t j = 0; j < r; ++j) {
        RngStream rng = root.child(std::uint64_t(j));
        std::vector<Vector<T>> f;
        for (index_t q = 0; q < ell; ++q) {
            Vector<T> v(d0);
            for (index_t i = 0; i < d0; ++i) v(i) = T(rng.normal());
            f.push_back(std::move(v));
        }
        G.col(j) = kron_expand(f, d);
    }
    return qr_econ(G).Q;
}

template <Scalar T>
double coherence(const Matrix<T>& Q) {
    double mu = 0;
    for (index_t i = 0; i < Q.rows(); ++i) mu = std::max(mu, Q.row(i).squaredNorm());
    return mu;
}

template <Scalar T>
double orthonormality_defect(const Matrix<T>& Q) {
    return (Q.adjoint() * Q - Matrix<T>::Identity(Q.cols(), Q.cols())).norm();
}

#define SKETCHKIT_INSTANTIATE(T)                                                         \
    template Matrix<T> adversarial_Q<T>(index_t, index_t);                               \
    template SparseMatrixCSR<T> adversarial_Q_sparse<T>(index_t, index_t);               \
    template Matrix<T> wht_columns_Q<T>(index_t, index_t);                               \
    template Matrix<T> kronecker_gaussian_Q<T>(index_t, index_t, index_t, std::uint64_t); \
    template double coherence<T>(const Matrix<T>&);                                      \
    template double orthonormality_defect<T>(const Matrix<T>&);
SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)
#undef SKETCHKIT_INSTANTIATE

}  // namespace sketchkit
