#pragma once

#include "sketchkit/sketch/test_matrix.hpp"
#include "sketchkit/trace/oracle.hpp"

#include <cstdint>

namespace sketchkit {

// tr(Omega^* A Omega) with Omega an isotropic n x t test matrix. Uses t matvecs.
template <Scalar T>
T girard_hutchinson(const MatvecOracle<T>& A, index_t t, const TestMatrixFactory<T>& family, std::uint64_t seed);

// tr(A_hat) + GH_{t/2}(A - A_hat), where A_hat is the generalized Nystrom
// approximation with t/6 right and t/3 left probes. Uses t matvecs. When t is
// not divisible by 6 the sketch sizes round down and the residual estimator
// receives the remaining budget.
template <Scalar T>
T na_hutch_pp(const MatvecOracle<T>& A, index_t t, const TestMatrixFactory<T>& family, std::uint64_t seed);

}  // namespace sketchkit
