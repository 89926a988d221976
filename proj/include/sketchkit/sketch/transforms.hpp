#pragma once

#include "sketchkit/core/types.hpp"

#include <string>

namespace sketchkit {

enum class Transform { WHT, DCT, DFT };
enum class TransformOp { Forward, Transpose, Adjoint };

const char* to_string(Transform t);
Transform parse_transform(const std::string& s);

bool is_power_of_two(index_t n);

// Unitary Walsh-Hadamard transform (Sylvester ordering, 1/sqrt(d) scaling).
template <Scalar T>
Vector<T> wht(const Vector<T>& x);
// Orthonormal DCT-II and its inverse (DCT-III, which is also its transpose).
RealVector dct2_ortho(const RealVector& x);
RealVector idct2_ortho(const RealVector& x);
// Unitary DFT with e^{-2 pi i jk/d}/sqrt(d) entries, and its inverse.
Vector<cplx> dft_unitary(const Vector<cplx>& x);
Vector<cplx> idft_unitary(const Vector<cplx>& x);

// Applies F, F^T or F^* to every column of X in place.
template <Scalar T>
void transform_columns(Transform t, TransformOp op, Matrix<T>& X);

}  // namespace sketchkit
