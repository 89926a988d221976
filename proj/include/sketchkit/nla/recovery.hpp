#pragma once

#include "sketchkit/core/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sketchkit {

// A linearly parameterized family span{M_1, ..., M_d} of n x m matrices
// that can evaluate the plain bilinear form y^T M_j x.
template <Scalar T>
class BilinearBasis {
  public:
    virtual ~BilinearBasis() = default;
    virtual index_t size() const = 0;
    virtual index_t rows() const = 0;
    virtual index_t cols() const = 0;
    virtual T bilinear(index_t j, const Vector<T>& x, const Vector<T>& y) const = 0;
    virtual Matrix<T> matrix(index_t j) const = 0;
    // Frobenius Gram matrix tr(M_i^* M_j).
    virtual Matrix<T> gram() const;
    // sum_j c_j M_j
    virtual Matrix<T> combine(const Vector<T>& c) const;
};

template <Scalar T>
class DenseBasis final : public BilinearBasis<T> {
  public:
    explicit DenseBasis(std::vector<Matrix<T>> mats);
    index_t size() const override { return index_t(mats_.size()); }
    index_t rows() const override { return mats_.front().rows(); }
    index_t cols() const override { return mats_.front().cols(); }
    T bilinear(index_t j, const Vector<T>& x, const Vector<T>& y) const override;
    Matrix<T> matrix(index_t j) const override { return mats_[std::size_t(j)]; }

  private:
    std::vector<Matrix<T>> mats_;
};

// The 2n-1 diagonal indicator matrices spanning the n x n Toeplitz matrices.
// Generator j has ones on the diagonal with offset j - (n - 1), i.e. entries
// (a, a + j - n + 1).
template <Scalar T>
class ToeplitzBasis final : public BilinearBasis<T> {
  public:
    explicit ToeplitzBasis(index_t n);
    index_t size() const override { return 2 * n_ - 1; }
    index_t rows() const override { return n_; }
    index_t cols() const override { return n_; }
    T bilinear(index_t j, const Vector<T>& x, const Vector<T>& y) const override;
    Matrix<T> matrix(index_t j) const override;
    Matrix<T> gram() const override;
    Matrix<T> combine(const Vector<T>& c) const override;

    // Orthogonal projection onto the Toeplitz matrices (diagonal averages).
    Matrix<T> project(const Matrix<T>& B) const;

  private:
    index_t n_;
};

// Oracle returning y^T B x.
template <Scalar T>
using BilinearOracle = std::function<T(const Vector<T>& x, const Vector<T>& y)>;

template <Scalar T>
BilinearOracle<T> bilinear_oracle(const Matrix<T>& B);

template <Scalar T>
struct RecoveryResult {
    Vector<T> coefficients;
    Matrix<T> estimate;
    index_t queries = 0;
    bool gram_deficient = false;
};

// Draws p standard normal pairs (x_i, y_i), queries g_i = y_i^T B x_i once
// each, and fits the coefficients by truncated least squares on
// f_ij = y_i^T M_j x_i.
template <Scalar T>
RecoveryResult<T> matrix_recovery(const BilinearOracle<T>& query, const BilinearBasis<T>& basis, index_t p,
                                  std::uint64_t seed);

}  // namespace sketchkit
