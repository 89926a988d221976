#pragma once

#include "sketchkit/core/sparse.hpp"
#include "sketchkit/core/types.hpp"

#include <atomic>
#include <cstdint>
#include <functional>

namespace sketchkit {

// Black-box access to an n x n operator through products with blocks of
// vectors. Every column of a product counts as one matvec.
template <Scalar T>
class MatvecOracle {
  public:
    explicit MatvecOracle(index_t n) : n_(n) {}
    virtual ~MatvecOracle() = default;
    MatvecOracle(const MatvecOracle&) = delete;
    MatvecOracle& operator=(const MatvecOracle&) = delete;

    index_t dim() const { return n_; }
    Matrix<T> apply(const Matrix<T>& V) const;
    Matrix<T> apply_adjoint(const Matrix<T>& V) const;
    std::int64_t matvecs() const { return count_.load(); }
    void reset_count() { count_.store(0); }

  protected:
    virtual Matrix<T> do_apply(const Matrix<T>& V) const = 0;
    virtual Matrix<T> do_apply_adjoint(const Matrix<T>& V) const = 0;

  private:
    index_t n_;
    mutable std::atomic<std::int64_t> count_{0};
};

template <Scalar T>
class DenseOracle final : public MatvecOracle<T> {
  public:
    explicit DenseOracle(Matrix<T> A);
    const Matrix<T>& matrix() const { return A_; }

  protected:
    Matrix<T> do_apply(const Matrix<T>& V) const override { return A_ * V; }
    Matrix<T> do_apply_adjoint(const Matrix<T>& V) const override { return A_.adjoint() * V; }

  private:
    Matrix<T> A_;
};

template <Scalar T>
class SparseOracle final : public MatvecOracle<T> {
  public:
    explicit SparseOracle(SparseMatrixCSR<T> A);

  protected:
    Matrix<T> do_apply(const Matrix<T>& V) const override { return A_.multiply(V); }
    Matrix<T> do_apply_adjoint(const Matrix<T>& V) const override { return A_.adjoint_multiply(V); }

  private:
    SparseMatrixCSR<T> A_;
};

template <Scalar T>
class FunctionOracle final : public MatvecOracle<T> {
  public:
    using Fn = std::function<Matrix<T>(const Matrix<T>&)>;
    FunctionOracle(index_t n, Fn apply, Fn apply_adjoint);

  protected:
    Matrix<T> do_apply(const Matrix<T>& V) const override { return f_(V); }
    Matrix<T> do_apply_adjoint(const Matrix<T>& V) const override { return fa_(V); }

  private:
    Fn f_, fa_;
};

}  // namespace sketchkit
