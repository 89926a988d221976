#include "sketchkit/trace/tfim.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/parallel.hpp"
#include "sketchkit/core/rng.hpp"
#include "sketchkit/trace/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sketchkit {

SparseMatrixCSR<double> tfim_hamiltonian(int ell, double h) {
    if (ell < 2 || ell > 24) throw PreconditionError("tfim_hamiltonian needs 2 <= ell <= 24");
    const index_t n = index_t(1) << ell;
    const int per_row = 1 + (h != 0 ? ell : 0);
    std::vector<index_t> ptr(std::size_t(n + 1)), idx;
    std::vector<double> val;
    idx.reserve(std::size_t(n * per_row));
    val.reserve(std::size_t(n * per_row));
    auto z = [&](index_t b, int site) {  // site in 1..ell
        return ((b >> (ell - site)) & 1) ? -1.0 : 1.0;
    };
    std::vector<std::pair<index_t, double>> row;
    for (index_t b = 0; b < n; ++b) {
        row.clear();
        double diag = 0;
        for (int i = 1; i <= ell; ++i) diag -= z(b, i) * z(b, i % ell + 1);
        row.emplace_back(b, diag);
        if (h != 0)
            for (int i = 1; i <= ell; ++i) row.emplace_back(b ^ (index_t(1) << (ell - i)), -h);
        std::sort(row.begin(), row.end());
        for (const auto& [c, v] : row) {
            idx.push_back(c);
            val.push_back(v);
        }
        ptr[b + 1] = index_t(idx.size());
    }
    return SparseMatrixCSR<double>(n, n, std::move(ptr), std::move(idx), std::move(val));
}

double tfim_shift(int ell, double h) { return (1 + h) * ell; }

namespace {

template <Scalar T>
void spmm(const SparseMatrixCSR<double>& H, const Matrix<T>& B, Matrix<T>& out) {
    const auto& ptr = H.row_ptr();
    const auto& idx = H.col_idx();
    const auto& val = H.values();
    out.resize(H.rows(), B.cols());
    for (index_t c = 0; c < B.cols(); ++c) {
        const T* b = B.col(c).data();
        T* y = out.col(c).data();
        for (index_t i = 0; i < H.rows(); ++i) {
            T s(0);
            for (index_t p = ptr[i]; p < ptr[i + 1]; ++p) s += val[p] * b[idx[p]];
            y[i] = s;
        }
    }
}

template <Scalar T>
double max_abs(const Matrix<T>& M) {
    return M.size() ? M.cwiseAbs().maxCoeff() : 0.0;
}

// Largest theta with sum_{j>m} theta^j / j! <= tol e^{-theta}, so that one
// scaled step is accurate relative to the smallest possible result norm.
double taylor_theta(int m, double tol) {
    auto remainder = [m](double th) {
        double term = 1, sum = 0;
        for (int j = 1; j <= m; ++j) term *= th / j;
        for (int j = m + 1; j < m + 400; ++j) {
            term *= th / j;
            sum += term;
            if (term < 1e-30 * sum) break;
        }
        return sum;
    };
    double lo = 0, hi = 64;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (remainder(mid) <= tol * std::exp(-mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

template <Scalar T>
Matrix<T> expm_matvec(const SparseMatrixCSR<double>& H, double beta, double shift, const Matrix<T>& V,
                      const ExpmOptions& opts) {
    const index_t n = H.rows();
    require_dims(H.cols() == n, "expm_matvec: H must be square");
    require_dims(V.rows() == n, "expm_matvec: V has the wrong row count");
    if (!(beta > 0)) throw PreconditionError("expm_matvec needs beta > 0");

    // Work with A' = -beta (H - cI), c = tr(H)/n; the remaining scalar factor
    // exp(-beta (shift + c)) is applied per step to avoid overflow.
    double trace = 0;
    std::vector<double> colsum(std::size_t(n), 0.0);
    for (index_t i = 0; i < n; ++i)
        for (index_t p = H.row_ptr()[i]; p < H.row_ptr()[i + 1]; ++p)
            if (H.col_idx()[p] == i) trace += H.values()[p];
    const double c = n ? trace / double(n) : 0.0;
    for (index_t i = 0; i < n; ++i) {
        bool diag_seen = false;
        for (index_t p = H.row_ptr()[i]; p < H.row_ptr()[i + 1]; ++p) {
            const index_t j = H.col_idx()[p];
            double v = H.values()[p];
            if (j == i) {
                v -= c;
                diag_seen = true;
            }
            colsum[std::size_t(j)] += std::abs(v);
        }
        if (!diag_seen) colsum[std::size_t(i)] += std::abs(c);
    }
    const double norm1 = beta * (n ? *std::max_element(colsum.begin(), colsum.end()) : 0.0);
    const double mu = -beta * (shift + c);

    constexpr int m_max = 55;
    static thread_local std::array<double, m_max + 1> theta{};
    static thread_local double theta_tol = -1;
    if (theta_tol != opts.tol) {
        for (int m = 1; m <= m_max; ++m) theta[std::size_t(m)] = taylor_theta(m, opts.tol);
        theta_tol = opts.tol;
    }
    int best_m = 0;
    index_t best_s = 1;
    if (norm1 > 0) {
        double best_cost = std::numeric_limits<double>::infinity();
        for (int m = 1; m <= m_max; ++m) {
            const double s = std::max(1.0, std::ceil(norm1 / theta[std::size_t(m)]));
            if (double(m) * s < best_cost) {
                best_cost = double(m) * s;
                best_m = m;
                best_s = index_t(s);
            }
        }
    }
    const double eta = std::exp(mu / double(best_s));
    Matrix<T> F = V;
    if (best_m == 0) return F * std::exp(mu);
    Matrix<T> B, HB;
    for (index_t step = 0; step < best_s; ++step) {
        B = F;
        double c1 = max_abs(B);
        for (int j = 1;; ++j) {
            if (j > opts.max_degree) throw NumericalError("expm_matvec: Taylor series did not converge");
            spmm(H, B, HB);
            B = (HB - c * B) * (-beta / (double(best_s) * j));
            F += B;
            const double c2 = max_abs(B);
            // Two consecutive negligible terms end the step; the planned
            // degree is a budget, not a requirement.
            if (c1 + c2 <= opts.tol * max_abs(F)) break;
            c1 = c2;
        }
        F *= eta;
    }
    return F;
}

const char* to_string(OperatorMode m) {
    switch (m) {
        case OperatorMode::Implicit:
            return "implicit";
        case OperatorMode::Materialized:
            return "materialized";
        default:
            return "auto";
    }
}

OperatorMode parse_operator_mode(const std::string& s) {
    if (s == "implicit") return OperatorMode::Implicit;
    if (s == "materialized") return OperatorMode::Materialized;
    if (s == "auto") return OperatorMode::Auto;
    throw ConfigError("unknown operator mode '" + s + "'");
}

double tfim_shifted_trace(int ell, double h, double beta) {
    if (ell > 14) throw PreconditionError("exact reference needs ell <= 14");
    const auto H = tfim_hamiltonian(ell, h);
    const RealVector lambda = eigvalsh<double>(H.to_dense());
    const double b = tfim_shift(ell, h);
    double s = 0;
    for (index_t i = 0; i < lambda.size(); ++i) s += std::exp(-beta * (lambda(i) + b));
    return s;
}

std::vector<std::string> partition_schema() {
    return {"estimator", "family", "ell", "h", "beta", "t", "trial", "estimate", "reference", "rel_error", "matvecs"};
}

CsvTable partition_function_experiment(const PartitionConfig& cfg) {
    if (cfg.ell < 2 || cfg.ell > 14) throw PreconditionError("partition_function_experiment needs 2 <= ell <= 14");
    if (cfg.trials < 1) throw PreconditionError("trials must be positive");
    if (!(cfg.beta > 0)) throw PreconditionError("beta must be positive");
    for (const auto& e : cfg.estimators)
        if (e != "gh" && e != "na-hutch++") throw ConfigError("unknown estimator '" + e + "'");
    if (cfg.family.dist >= 0 && is_complex_dist(EntryDist(cfg.family.dist)))
        throw PreconditionError("the partition-function driver uses real probes");

    const auto H = tfim_hamiltonian(cfg.ell, cfg.h);
    const index_t n = H.rows();
    const double b = tfim_shift(cfg.ell, cfg.h);
    const double reference = tfim_shifted_trace(cfg.ell, cfg.h, cfg.beta);
    const double unshift = std::exp(cfg.beta * b);

    index_t total_probes = 0;
    for (index_t t : cfg.t_grid) total_probes += std::max<index_t>(t, 0) * cfg.trials * index_t(cfg.estimators.size());
    OperatorMode mode = cfg.mode;
    if (mode == OperatorMode::Auto) mode = total_probes > n ? OperatorMode::Materialized : OperatorMode::Implicit;
    Matrix<double> dense;
    if (mode == OperatorMode::Materialized) dense = expm_matvec<double>(H, cfg.beta, b, Matrix<double>::Identity(n, n));

    const auto family = factory_for<double>(cfg.family);
    const index_t ne = index_t(cfg.estimators.size());
    const index_t nt = index_t(cfg.t_grid.size());
    const index_t jobs = nt * ne * cfg.trials;
    std::vector<CsvRecord> rows(static_cast<std::size_t>(jobs));
    const RngStream root(cfg.seed);
    parallel_for(jobs, [&](index_t job) {
        const index_t trial = job % cfg.trials;
        const index_t e = (job / cfg.trials) % ne;
        const index_t ti = job / (cfg.trials * ne);
        const index_t t = cfg.t_grid[std::size_t(ti)];
        const std::string& name = cfg.estimators[std::size_t(e)];
        CsvRecord rec{name,
                      cfg.family.describe(),
                      std::int64_t(cfg.ell),
                      cfg.h,
                      cfg.beta,
                      std::int64_t(t),
                      std::int64_t(trial),
                      0.0,
                      reference * unshift,
                      0.0,
                      std::int64_t(0)};
        if (t <= 0) {
            rec[7] = std::numeric_limits<double>::quiet_NaN();
            rec[9] = std::numeric_limits<double>::quiet_NaN();
            rows[std::size_t(job)] = std::move(rec);
            return;
        }
        FunctionOracle<double>::Fn apply;
        if (mode == OperatorMode::Materialized)
            apply = [&](const Matrix<double>& V) { return Matrix<double>(dense * V); };
        else
            apply = [&](const Matrix<double>& V) { return expm_matvec<double>(H, cfg.beta, b, V); };
        // A is symmetric; the materialized copy is used through its transpose for adjoint products.
        FunctionOracle<double>::Fn apply_adj;
        if (mode == OperatorMode::Materialized)
            apply_adj = [&](const Matrix<double>& V) { return Matrix<double>(dense.transpose() * V); };
        else
            apply_adj = apply;
        FunctionOracle<double> oracle(n, apply, apply_adj);
        const std::uint64_t s = root.child({std::uint64_t(t), std::uint64_t(trial)}).next_u64();
        const double est = name == "gh" ? girard_hutchinson<double>(oracle, t, family, s)
                                        : na_hutch_pp<double>(oracle, t, family, s);
        rec[7] = est * unshift;
        rec[9] = std::abs(est - reference) / reference;
        rec[10] = std::int64_t(oracle.matvecs());
        rows[std::size_t(job)] = std::move(rec);
    });
    CsvTable table{partition_schema(), {}};
    for (auto& r : rows) table.add(std::move(r));
    return table;
}

template Matrix<double> expm_matvec(const SparseMatrixCSR<double>&, double, double, const Matrix<double>&,
                                    const ExpmOptions&);
template Matrix<cplx> expm_matvec(const SparseMatrixCSR<double>&, double, double, const Matrix<cplx>&,
                                  const ExpmOptions&);

}  // namespace sketchkit
