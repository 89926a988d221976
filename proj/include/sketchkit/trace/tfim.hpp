#pragma once

#include "sketchkit/core/csv.hpp"
#include "sketchkit/core/sparse.hpp"
#include "sketchkit/sketch/test_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sketchkit {

// H = -sum_i Z_i Z_{i+1} - h sum_i X_i on a periodic chain of ell spins.
// Site 1 is the most significant bit of the basis index.
SparseMatrixCSR<double> tfim_hamiltonian(int ell, double h);

// Shift b = (1 + h) ell making H + bI positive semidefinite.
double tfim_shift(int ell, double h);

struct ExpmOptions {
    double tol = eps_mach;
    int max_degree = 2000;  // per scaling step
};

// exp(-beta (H + b I)) V by a scaled truncated Taylor series with early
// termination. H must be square.
template <Scalar T>
Matrix<T> expm_matvec(const SparseMatrixCSR<double>& H, double beta, double shift, const Matrix<T>& V,
                      const ExpmOptions& opts = {});

enum class OperatorMode {
    Implicit,      // Taylor action on every probe block
    Materialized,  // Taylor action on the identity once, dense products after
    Auto,          // materialize when the total probe count exceeds n
};

const char* to_string(OperatorMode m);
OperatorMode parse_operator_mode(const std::string& s);

struct PartitionConfig {
    int ell = 10;
    double h = 10;
    double beta = 4;
    std::vector<index_t> t_grid{600};
    std::vector<std::string> estimators{"gh", "na-hutch++"};
    SketchSpec family{Family::KhatriRao, 4, 0, -1, int(EntryDist::RealSpherical), 2, 0};
    index_t trials = 30;
    std::uint64_t seed = 1;
    OperatorMode mode = OperatorMode::Auto;
};

// Exact tr(exp(-beta (H + b I))) from the full spectrum of H.
double tfim_shifted_trace(int ell, double h, double beta);

// Rows follow the schema (estimator, family, ell, h, beta, t, trial,
// estimate, reference, rel_error, matvecs), ordered by t, estimator, trial.
// Estimates and references are partition functions Z = e^{beta b} tr(A); the
// relative error is computed on the shifted scale. A budget t <= 0 yields
// rows with nan estimates and zero matvecs.
CsvTable partition_function_experiment(const PartitionConfig& cfg);

std::vector<std::string> partition_schema();

}  // namespace sketchkit
