#include "sketchkit/core/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace sketchkit {

template <Scalar T>
SparseMatrixCSR<T>::SparseMatrixCSR(index_t rows, index_t cols, std::vector<index_t> row_ptr,
                                    std::vector<index_t> col_idx, std::vector<T> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
    require_dims(rows_ >= 0 && cols_ >= 0, "negative sparse dimensions");
    require_dims(index_t(row_ptr_.size()) == rows_ + 1, "row_ptr must have rows+1 entries");
    require_dims(row_ptr_.front() == 0, "row_ptr[0] must be 0");
    require_dims(col_idx_.size() == values_.size(), "col_idx and values lengths differ");
    require_dims(row_ptr_.back() == index_t(values_.size()), "row_ptr[rows] must equal nnz");
    for (index_t i = 0; i < rows_; ++i) {
        require_dims(row_ptr_[i] <= row_ptr_[i + 1], "row_ptr must be nondecreasing");
        for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            require_dims(col_idx_[p] >= 0 && col_idx_[p] < cols_, "column index out of range");
            require_dims(p == row_ptr_[i] || col_idx_[p - 1] < col_idx_[p],
                         "column indices must be strictly increasing within a row");
        }
    }
}

template <Scalar T>
SparseMatrixCSR<T> SparseMatrixCSR<T>::from_triplets(index_t rows, index_t cols, std::vector<Triplet<T>> e) {
    for (const auto& t : e)
        require_dims(t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols, "triplet index out of range");
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    std::vector<index_t> ptr(rows + 1, 0), idx;
    std::vector<T> val;
    idx.reserve(e.size());
    val.reserve(e.size());
    for (std::size_t q = 0; q < e.size(); ++q) {
        if (q > 0 && e[q].row == e[q - 1].row && e[q].col == e[q - 1].col) {
            val.back() += e[q].value;
            continue;
        }
        idx.push_back(e[q].col);
        val.push_back(e[q].value);
        ++ptr[e[q].row + 1];
    }
    for (index_t i = 0; i < rows; ++i) ptr[i + 1] += ptr[i];
    return SparseMatrixCSR(rows, cols, std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
SparseMatrixCSR<T> SparseMatrixCSR<T>::from_dense(const Matrix<T>& A) {
    std::vector<index_t> ptr(A.rows() + 1, 0), idx;
    std::vector<T> val;
    for (index_t i = 0; i < A.rows(); ++i) {
        for (index_t j = 0; j < A.cols(); ++j)
            if (A(i, j) != T(0)) {
                idx.push_back(j);
                val.push_back(A(i, j));
            }
        ptr[i + 1] = index_t(idx.size());
    }
    return SparseMatrixCSR(A.rows(), A.cols(), std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
SparseMatrixCSR<T> SparseMatrixCSR<T>::identity(index_t n) {
    return diagonal(Vector<T>::Ones(n));
}

template <Scalar T>
SparseMatrixCSR<T> SparseMatrixCSR<T>::diagonal(const Vector<T>& d) {
    const index_t n = d.size();
    std::vector<index_t> ptr(n + 1), idx(n);
    std::vector<T> val(n);
    for (index_t i = 0; i < n; ++i) {
        ptr[i + 1] = i + 1;
        idx[i] = i;
        val[i] = d(i);
    }
    return SparseMatrixCSR(n, n, std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
Matrix<T> SparseMatrixCSR<T>::to_dense() const {
    Matrix<T> D = Matrix<T>::Zero(rows_, cols_);
    for (index_t i = 0; i < rows_; ++i)
        for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) D(i, col_idx_[p]) = values_[p];
    return D;
}

template <Scalar T>
SparseMatrixCSR<T> SparseMatrixCSR<T>::adjoint() const {
    std::vector<index_t> ptr(cols_ + 1, 0), idx(values_.size());
    std::vector<T> val(values_.size());
    for (index_t c : col_idx_) ++ptr[c + 1];
    for (index_t j = 0; j < cols_; ++j) ptr[j + 1] += ptr[j];
    std::vector<index_t> next(ptr.begin(), ptr.end() - 1);
    for (index_t i = 0; i < rows_; ++i)
        for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            const index_t q = next[col_idx_[p]]++;
            idx[q] = i;
            val[q] = sketchkit::conj(values_[p]);
        }
    return SparseMatrixCSR(cols_, rows_, std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
double SparseMatrixCSR<T>::frobenius_norm() const {
    double s = 0;
    for (const T& v : values_) s += abs2(v);
    return std::sqrt(s);
}

template <Scalar T>
double SparseMatrixCSR<T>::norm1() const {
    std::vector<double> colsum(cols_, 0.0);
    for (std::size_t p = 0; p < values_.size(); ++p) colsum[col_idx_[p]] += std::abs(values_[p]);
    return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

template <Scalar T>
Matrix<T> SparseMatrixCSR<T>::multiply(const Matrix<T>& B) const {
    require_dims(B.rows() == cols_, "sparse multiply: inner dimensions differ");
    Matrix<T> Y(rows_, B.cols());
    for (index_t c = 0; c < B.cols(); ++c) {
        const T* b = B.col(c).data();
        T* y = Y.col(c).data();
        for (index_t i = 0; i < rows_; ++i) {
            T s(0);
            for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * b[col_idx_[p]];
            y[i] = s;
        }
    }
    return Y;
}

template <Scalar T>
Matrix<T> SparseMatrixCSR<T>::adjoint_multiply(const Matrix<T>& B) const {
    require_dims(B.rows() == rows_, "sparse adjoint multiply: inner dimensions differ");
    Matrix<T> Y = Matrix<T>::Zero(cols_, B.cols());
    for (index_t c = 0; c < B.cols(); ++c) {
        const T* b = B.col(c).data();
        T* y = Y.col(c).data();
        for (index_t i = 0; i < rows_; ++i) {
            const T bi = b[i];
            for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) y[col_idx_[p]] += sketchkit::conj(values_[p]) * bi;
        }
    }
    return Y;
}

template <Scalar T>
Matrix<T> SparseMatrixCSR<T>::right_multiply(const Matrix<T>& B) const {
    require_dims(B.cols() == rows_, "sparse right multiply: inner dimensions differ");
    Matrix<T> Y = Matrix<T>::Zero(B.rows(), cols_);
    for (index_t i = 0; i < rows_; ++i)
        for (index_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) Y.col(col_idx_[p]) += values_[p] * B.col(i);
    return Y;
}

template class SparseMatrixCSR<double>;
template class SparseMatrixCSR<cplx>;

}  // namespace sketchkit
