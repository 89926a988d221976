#include "sketchkit/bench/experiments.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/parallel.hpp"
#include "sketchkit/core/rng.hpp"
#include "sketchkit/core/stats.hpp"
#include "sketchkit/nla/algorithms.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace sketchkit {

namespace {

constexpr index_t error_block = 256;

}  // namespace

template <Scalar T>
double lowrank_error(const SparseMatrixCSR<T>& A, const Matrix<T>& L, const Matrix<T>& R) {
    require_dims(L.rows() == A.rows() && R.rows() == A.cols() && L.cols() == R.cols(),
                 "lowrank_error: factor shapes do not match A");
    // Columns of A are the rows of A^*.
    const SparseMatrixCSR<T> At = A.adjoint();
    double total = 0;
    for (index_t j0 = 0; j0 < A.cols(); j0 += error_block) {
        const index_t w = std::min(error_block, A.cols() - j0);
        Matrix<T> D = -(L * R.middleRows(j0, w).adjoint());
        for (index_t j = j0; j < j0 + w; ++j)
            for (index_t p = At.row_ptr()[std::size_t(j)]; p < At.row_ptr()[std::size_t(j + 1)]; ++p)
                D(At.col_idx()[std::size_t(p)], j - j0) += conj(At.values()[std::size_t(p)]);
        total += D.squaredNorm();
    }
    return std::sqrt(total);
}

template <Scalar T>
double lowrank_error(const Matrix<T>& A, const Matrix<T>& L, const Matrix<T>& R) {
    require_dims(L.rows() == A.rows() && R.rows() == A.cols() && L.cols() == R.cols(),
                 "lowrank_error: factor shapes do not match A");
    double total = 0;
    for (index_t j0 = 0; j0 < A.cols(); j0 += error_block) {
        const index_t w = std::min(error_block, A.cols() - j0);
        total += (A.middleCols(j0, w) - L * R.middleRows(j0, w).adjoint()).squaredNorm();
    }
    return std::sqrt(total);
}

std::vector<std::string> error_ratio_schema() {
    return {"matrix", "family", "k", "trial", "gaussian_seed", "structured_seed",
            "error_gaussian", "error_structured", "ratio", "flag"};
}

CsvTable run_error_ratio(const ErrorRatioConfig& cfg) {
    if (cfg.inputs.empty()) throw ConfigError("error-ratio needs at least one input matrix");
    if (cfg.trials < 1) throw ConfigError("key 'trials' must be positive");
    for (index_t k : cfg.k_grid)
        if (k < 1) throw ConfigError("key 'k' must hold positive values");

    const SketchSpec gaussian{Family::Gaussian};
    struct Job {
        std::size_t input;
        index_t k;
        index_t trial;
    };
    std::vector<Job> jobs;
    for (std::size_t m = 0; m < cfg.inputs.size(); ++m)
        for (index_t k : cfg.k_grid)
            for (index_t t = 0; t < cfg.trials; ++t) jobs.push_back({m, k, t});

    CsvTable table;
    table.schema = error_ratio_schema();
    table.rows.resize(jobs.size());
    const std::string fam = cfg.structured.describe();
    parallel_for(index_t(jobs.size()), [&](std::int64_t j) {
        const Job& job = jobs[std::size_t(j)];
        const auto& A = cfg.inputs[job.input].A;
        if (job.k > std::min(A.rows(), A.cols())) throw ConfigError("key 'k' exceeds the matrix dimensions");
        // Sketch seeds depend on (input, k, trial) only, so the baseline and the
        // structured family see the same instance in every trial.
        const RngStream base(cfg.seed, {std::uint64_t(job.input), std::uint64_t(job.k), std::uint64_t(job.trial)});
        const std::uint64_t sg = base.child(0).next_u64(), ss = base.child(1).next_u64();
        const auto og = make_test_matrix<double>(gaussian, A.cols(), job.k, sg);
        const auto os = make_test_matrix<double>(cfg.structured, A.cols(), job.k, ss);
        const SvdFactors<double> fg = rsvd(A, *og), fs = rsvd(A, *os);
        const double eg = lowrank_error<double>(A, fg.U * fg.sigma.asDiagonal(), fg.V);
        const double es = lowrank_error<double>(A, fs.U * fs.sigma.asDiagonal(), fs.V);
        double ratio;
        std::string flag;
        if (A.frobenius_norm() == 0) {
            ratio = 1;
            flag = "zero-matrix";
        } else if (eg == 0) {
            ratio = es == 0 ? 1.0 : INFINITY;
            flag = "zero-baseline";
        } else {
            ratio = es / eg;
        }
        table.rows[std::size_t(j)] = {cfg.inputs[job.input].label, fam, std::int64_t(job.k), std::int64_t(job.trial),
                                      std::to_string(sg), std::to_string(ss), eg, es, ratio, flag};
    });
    return table;
}

std::vector<std::string> timing_schema() {
    return {"family", "n", "d", "k", "zeta", "reps", "median_seconds", "machine"};
}

std::string machine_descriptor() {
    std::string model = "unknown-cpu";
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("model name", 0) == 0) {
            const auto c = line.find(':');
            if (c != std::string::npos) model = line.substr(c + 2);
            break;
        }
    std::ostringstream o;
    o << model << "; hw_threads=" << std::thread::hardware_concurrency() << "; workers=" << worker_count();
    return o.str();
}

CsvTable run_timing(const TimingConfig& cfg) {
    const index_t d = cfg.d > 0 ? cfg.d : cfg.n;
    if (cfg.n < 1 || d < 1) throw ConfigError("timing needs positive matrix dimensions");
    if (cfg.k_grid.empty()) throw ConfigError("timing needs at least one k");
    for (index_t k : cfg.k_grid)
        if (k < 1) throw ConfigError("timing needs positive k");
    if (cfg.reps < 10) throw ConfigError("timing needs at least 10 repetitions");
    if (cfg.warmup < 0) throw ConfigError("warmup must be nonnegative");

    RngStream rng(cfg.seed, {0x74696d65ULL});
    Matrix<double> A(cfg.n, d);
    for (index_t j = 0; j < d; ++j)
        for (index_t i = 0; i < cfg.n; ++i) A(i, j) = rng.normal();

    CsvTable table;
    table.schema = timing_schema();
    const std::string machine = machine_descriptor();
    for (const SketchSpec& spec : cfg.families)
        for (index_t k : cfg.k_grid) {
            const auto tm = make_test_matrix<double>(spec, d, k, cfg.seed);
            std::vector<double> secs;
            for (index_t r = 0; r < cfg.warmup + cfg.reps; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                const Matrix<double> Y = tm->apply_right(A);
                const auto t1 = std::chrono::steady_clock::now();
                if (Y.rows() != cfg.n) throw NumericalError("timing: unexpected sketch shape");
                if (r >= cfg.warmup) secs.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
            const bool sparse_family = spec.family == Family::SparseStack || spec.family == Family::SparseUniform ||
                                       spec.family == Family::SparseIID;
            table.add({std::string(to_string(spec.family)), std::int64_t(cfg.n), std::int64_t(d), std::int64_t(k),
                       sparse_family ? CsvValue(spec.zeta) : CsvValue(std::string()), std::int64_t(cfg.reps),
                       median(secs), machine});
        }
    return table;
}

#define SKETCHKIT_INSTANTIATE(T)                                                                         \
    template double lowrank_error<T>(const SparseMatrixCSR<T>&, const Matrix<T>&, const Matrix<T>&); \
    template double lowrank_error<T>(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&);
SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)
#undef SKETCHKIT_INSTANTIATE

}  // namespace sketchkit
