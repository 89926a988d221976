#pragma once

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/types.hpp"

#include <vector>

namespace sketchkit {

template <Scalar T>
struct Triplet {
    index_t row;
    index_t col;
    T value;
};

// Compressed sparse row storage. Column indices are strictly increasing
// within each row; validated on construction.
template <Scalar T>
class SparseMatrixCSR {
  public:
    SparseMatrixCSR() = default;
    SparseMatrixCSR(index_t rows, index_t cols, std::vector<index_t> row_ptr, std::vector<index_t> col_idx,
                    std::vector<T> values);

    // Duplicates are summed; explicit zeros are kept.
    static SparseMatrixCSR from_triplets(index_t rows, index_t cols, std::vector<Triplet<T>> entries);
    static SparseMatrixCSR from_dense(const Matrix<T>& A);
    static SparseMatrixCSR identity(index_t n);
    static SparseMatrixCSR diagonal(const Vector<T>& d);

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    index_t nnz() const { return index_t(values_.size()); }

    const std::vector<index_t>& row_ptr() const { return row_ptr_; }
    const std::vector<index_t>& col_idx() const { return col_idx_; }
    const std::vector<T>& values() const { return values_; }

    Matrix<T> to_dense() const;
    SparseMatrixCSR adjoint() const;
    double frobenius_norm() const;
    // Maximum absolute column sum.
    double norm1() const;

    // this * B
    Matrix<T> multiply(const Matrix<T>& B) const;
    // this^* * B
    Matrix<T> adjoint_multiply(const Matrix<T>& B) const;
    // B * this
    Matrix<T> right_multiply(const Matrix<T>& B) const;

  private:
    index_t rows_ = 0, cols_ = 0;
    std::vector<index_t> row_ptr_{0};
    std::vector<index_t> col_idx_;
    std::vector<T> values_;
};

extern template class SparseMatrixCSR<double>;
extern template class SparseMatrixCSR<cplx>;

}  // namespace sketchkit
