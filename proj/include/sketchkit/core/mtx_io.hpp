#pragma once

#include "sketchkit/core/sparse.hpp"
#include "sketchkit/core/types.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace sketchkit {

// Coordinate files load as CSR, array files as dense.
using AnyMatrix = std::variant<SparseMatrixCSR<double>, SparseMatrixCSR<cplx>, Matrix<double>, Matrix<cplx>>;

AnyMatrix read_matrix_market(const std::string& path);
AnyMatrix read_matrix_market(std::istream& in);

template <Scalar T>
void write_matrix_market(const std::string& path, const SparseMatrixCSR<T>& A);
template <Scalar T>
void write_matrix_market(const std::string& path, const Matrix<T>& A);
template <Scalar T>
void write_matrix_market(std::ostream& out, const SparseMatrixCSR<T>& A);
template <Scalar T>
void write_matrix_market(std::ostream& out, const Matrix<T>& A);

}  // namespace sketchkit
