#pragma once

#include "sketchkit/core/sparse.hpp"
#include "sketchkit/core/types.hpp"

#include <string>
#include <vector>

namespace sketchkit {

enum class TestbedKind { LowRankPlusNoise, PolyDecay, ExpDecay };

const char* to_string(TestbedKind k);
TestbedKind parse_testbed_kind(const std::string& s);

// Diagonal spectrum with R leading ones followed by a tail:
//   LowRankPlusNoise  eps
//   PolyDecay         (i - R + 1)^{-p}
//   ExpDecay          10^{-q (i - R)}
// for i = R+1, ..., n (one-based). param carries eps, p or q.
struct TestbedSpectrum {
    TestbedKind kind = TestbedKind::PolyDecay;
    index_t R = 10;
    double param = 1;

    std::string label() const;
};

// "poly:1", "exp:0.25", "lowrank-noise:1e-2", optionally with ":R" appended.
TestbedSpectrum parse_spectrum(const std::string& s, index_t default_R = 10);

RealVector testbed_diagonal(const TestbedSpectrum& s, index_t n);
Matrix<double> testbed_generate(const TestbedSpectrum& s, index_t n);
SparseMatrixCSR<double> testbed_sparse(const TestbedSpectrum& s, index_t n);

// Four parameter values for each kind, R = 10.
std::vector<TestbedSpectrum> default_testbed();

}  // namespace sketchkit
