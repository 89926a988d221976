#include "sketchkit/trace/oracle.hpp"

#include "sketchkit/core/errors.hpp"

namespace sketchkit {

template <Scalar T>
Matrix<T> MatvecOracle<T>::apply(const Matrix<T>& V) const {
    require_dims(V.rows() == n_, "oracle apply: wrong vector length");
    count_.fetch_add(V.cols());
    return do_apply(V);
}

template <Scalar T>
Matrix<T> MatvecOracle<T>::apply_adjoint(const Matrix<T>& V) const {
    require_dims(V.rows() == n_, "oracle apply_adjoint: wrong vector length");
    count_.fetch_add(V.cols());
    return do_apply_adjoint(V);
}

template <Scalar T>
DenseOracle<T>::DenseOracle(Matrix<T> A) : MatvecOracle<T>(A.rows()), A_(std::move(A)) {
    require_dims(A_.rows() == A_.cols(), "oracle operator must be square");
}

template <Scalar T>
SparseOracle<T>::SparseOracle(SparseMatrixCSR<T> A) : MatvecOracle<T>(A.rows()), A_(std::move(A)) {
    require_dims(A_.rows() == A_.cols(), "oracle operator must be square");
}

template <Scalar T>
FunctionOracle<T>::FunctionOracle(index_t n, Fn apply, Fn apply_adjoint)
    : MatvecOracle<T>(n), f_(std::move(apply)), fa_(std::move(apply_adjoint)) {}

template class MatvecOracle<double>;
template class MatvecOracle<cplx>;
template class DenseOracle<double>;
template class DenseOracle<cplx>;
template class SparseOracle<double>;
template class SparseOracle<cplx>;
template class FunctionOracle<double>;
template class FunctionOracle<cplx>;

}  // namespace sketchkit
