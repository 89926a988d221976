#pragma once

#include "sketchkit/core/csv.hpp"
#include "sketchkit/core/sparse.hpp"
#include "sketchkit/core/types.hpp"
#include "sketchkit/sketch/test_matrix.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace sketchkit {

struct InjectivityDilation {
    double alpha = 0;  // sigma_min^2(Omega^* Q)
    double beta = 0;   // sigma_max^2(Omega^* Q)
    double frob_sq = 0;  // ||Omega^* Q||_F^2
};

// Extreme squared singular values of Omega^* Q. Q must be orthonormal to 1e-8.
// A smallest singular value below max(k, r) * u * sigma_max is reported as 0.
template <Scalar T>
InjectivityDilation injectivity_dilation(const TestMatrix<T>& tm, const Matrix<T>& Q);
// Sparse Q. For sparse families with large r the Gram operator is handled by
// Lanczos; everything else goes through the dense path.
template <Scalar T>
InjectivityDilation injectivity_dilation(const TestMatrix<T>& tm, const SparseMatrixCSR<T>& Q);

struct LanczosResult {
    double lambda_min = 0;
    double lambda_max = 0;
    index_t iterations = 0;
    bool converged = false;
};

// Extreme eigenvalues of a self-adjoint operator on F^n by Lanczos with full
// reorthogonalization. Stops when both extreme Ritz residuals fall below
// tol * |lambda_max|.
template <Scalar T>
LanczosResult lanczos_extremes(const std::function<Vector<T>(const Vector<T>&)>& op, index_t n, std::uint64_t seed,
                               double tol = 1e-10, index_t max_iter = 3000);

struct OsiReport {
    std::string family;
    std::string params;
    std::string subspace;
    index_t d = 0, r = 0, k = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> alpha, beta;
    // Mean of ||Omega^* Q||_F^2 / r over trials and its standard error.
    double isotropy_mean = 0, isotropy_stderr = 0;
    double alpha_q10 = 0, alpha_q50 = 0, alpha_q90 = 0;
    double beta_q10 = 0, beta_q50 = 0, beta_q90 = 0;
    // Empirical failure_quantile of alpha.
    double certified_alpha = 0;

    index_t trials() const { return index_t(alpha.size()); }
    bool isotropy_ok(double z = 4) const;
    CsvTable to_csv() const;
};

template <Scalar T>
using SubspaceSource = std::variant<Matrix<T>, SparseMatrixCSR<T>>;

// Trial i uses the test matrix factory(d, k, child seed i).
template <Scalar T>
OsiReport measure_osi(const TestMatrixFactory<T>& factory, const SubspaceSource<T>& Q, index_t k, index_t trials,
                      std::uint64_t seed, const std::string& subspace_label = "user",
                      double failure_quantile = 0.05);

// measure_osi with at least 20 trials; certified_alpha is the empirical
// failure_quantile of the injectivity samples.
template <Scalar T>
OsiReport osi_certify(const TestMatrixFactory<T>& factory, const SubspaceSource<T>& Q, index_t k, index_t trials,
                      std::uint64_t seed, double failure_quantile = 0.05, const std::string& subspace_label = "user");

std::uint64_t trial_seed(std::uint64_t root, index_t trial);

}  // namespace sketchkit
