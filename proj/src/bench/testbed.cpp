#include "sketchkit/bench/testbed.hpp"

#include "sketchkit/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sketchkit {

const char* to_string(TestbedKind k) {
    switch (k) {
        case TestbedKind::LowRankPlusNoise:
            return "lowrank-noise";
        case TestbedKind::PolyDecay:
            return "poly";
        case TestbedKind::ExpDecay:
            return "exp";
    }
    return "?";
}

TestbedKind parse_testbed_kind(const std::string& s) {
    for (auto k : {TestbedKind::LowRankPlusNoise, TestbedKind::PolyDecay, TestbedKind::ExpDecay})
        if (s == to_string(k)) return k;
    throw ConfigError("unknown testbed kind '" + s + "'");
}

std::string TestbedSpectrum::label() const {
    std::ostringstream o;
    o << to_string(kind) << "(R=" << R << "," << (kind == TestbedKind::LowRankPlusNoise ? "eps" : kind == TestbedKind::PolyDecay ? "p" : "q")
      << "=" << param << ")";
    return o.str();
}

TestbedSpectrum parse_spectrum(const std::string& s, index_t default_R) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ':')) parts.push_back(cur);
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("spectrum '" + s + "' is not kind:param[:R]");
    TestbedSpectrum out;
    out.kind = parse_testbed_kind(parts[0]);
    try {
        std::size_t used = 0;
        out.param = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("trailing");
        out.R = default_R;
        if (parts.size() == 3) {
            out.R = std::stoll(parts[2], &used);
            if (used != parts[2].size()) throw std::invalid_argument("trailing");
        }
    } catch (const std::exception&) {
        throw ConfigError("spectrum '" + s + "' has a malformed number");
    }
    return out;
}

RealVector testbed_diagonal(const TestbedSpectrum& s, index_t n) {
    if (s.R < 0 || n < s.R) throw PreconditionError("testbed needs 0 <= R <= n");
    if (!(s.param > 0)) throw PreconditionError("testbed parameter must be positive");
    RealVector d(n);
    for (index_t i = 1; i <= n; ++i) {
        double v = 1;
        if (i > s.R) {
            switch (s.kind) {
                case TestbedKind::LowRankPlusNoise:
                    v = s.param;
                    break;
                case TestbedKind::PolyDecay:
                    v = std::pow(double(i - s.R + 1), -s.param);
                    break;
                case TestbedKind::ExpDecay:
                    // Floored at the smallest normal double so the tail stays positive.
                    v = std::max(std::pow(10.0, -s.param * double(i - s.R)), std::numeric_limits<double>::min());
                    break;
            }
        }
        d(i - 1) = v;
    }
    return d;
}

Matrix<double> testbed_generate(const TestbedSpectrum& s, index_t n) {
    return testbed_diagonal(s, n).asDiagonal();
}

SparseMatrixCSR<double> testbed_sparse(const TestbedSpectrum& s, index_t n) {
    return SparseMatrixCSR<double>::diagonal(testbed_diagonal(s, n));
}

std::vector<TestbedSpectrum> default_testbed() {
    std::vector<TestbedSpectrum> out;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) out.push_back({TestbedKind::LowRankPlusNoise, 10, eps});
    for (double p : {0.5, 1.0, 1.5, 2.0}) out.push_back({TestbedKind::PolyDecay, 10, p});
    for (double q : {0.1, 0.25, 0.5, 1.0}) out.push_back({TestbedKind::ExpDecay, 10, q});
    return out;
}

}  // namespace sketchkit
