#pragma once

#include "sketchkit/bench/config.hpp"
#include "sketchkit/bench/testbed.hpp"
#include "sketchkit/core/csv.hpp"
#include "sketchkit/core/lowrank.hpp"
#include "sketchkit/core/sparse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sketchkit {

// ||A - L R^*||_F computed entrywise, column block by column block.
template <Scalar T>
double lowrank_error(const SparseMatrixCSR<T>& A, const Matrix<T>& L, const Matrix<T>& R);
template <Scalar T>
double lowrank_error(const Matrix<T>& A, const Matrix<T>& L, const Matrix<T>& R);

struct ErrorRatioInput {
    std::string label;
    SparseMatrixCSR<double> A;
};

struct ErrorRatioConfig {
    std::vector<ErrorRatioInput> inputs;
    std::vector<index_t> k_grid{20, 50, 100};
    SketchSpec structured{Family::SparseStack};
    index_t trials = 50;
    std::uint64_t seed = 1;
};

// RSVD error of the structured family over that of a Gaussian sketch for each
// (input, k, trial). Rows are ordered by input, k, trial. A zero baseline
// error gives ratio 1 and a flag.
CsvTable run_error_ratio(const ErrorRatioConfig& cfg);
std::vector<std::string> error_ratio_schema();

struct TimingConfig {
    std::vector<SketchSpec> families{SketchSpec{Family::Gaussian}, SketchSpec{Family::SparseStack}};
    index_t n = 4096;  // rows of A
    index_t d = 0;     // columns of A, 0 means n
    std::vector<index_t> k_grid{512};
    index_t reps = 10;
    index_t warmup = 2;
    std::uint64_t seed = 1;
};

// Median wall-clock seconds of apply_right on a dense Gaussian A, with the
// warmup repetitions discarded.
CsvTable run_timing(const TimingConfig& cfg);
std::vector<std::string> timing_schema();
std::string machine_descriptor();

}  // namespace sketchkit
