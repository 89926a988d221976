#include "sketchkit/bench/commands.hpp"

#include "sketchkit/bench/experiments.hpp"
#include "sketchkit/bench/testbed.hpp"
#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/mtx_io.hpp"
#include "sketchkit/core/parallel.hpp"
#include "sketchkit/core/rng.hpp"
#include "sketchkit/diagnostics/osi.hpp"
#include "sketchkit/diagnostics/subspaces.hpp"
#include "sketchkit/nla/algorithms.hpp"
#include "sketchkit/nla/recovery.hpp"
#include "sketchkit/trace/tfim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace sketchkit {

namespace {

std::vector<KeySpec> with(std::vector<KeySpec> a, const std::vector<KeySpec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<KeySpec> common_keys(const std::string& trials) {
    return {
        {"seed", KeyType::Int, "1", "root seed"},
        {"trials", KeyType::Int, trials, "independent trials per grid point"},
        {"output", KeyType::String, "-", "CSV path, '-' for standard output"},
    };
}

std::vector<KeySpec> source_keys(const std::string& source) {
    return {
        {"source", KeyType::String, source, "lowrank-noise, poly, exp, or a Matrix Market path"},
        {"n", KeyType::Int, "1024", "synthetic dimension"},
        {"R", KeyType::Int, "10", "synthetic leading rank"},
        {"param", KeyType::Real, "1", "synthetic eps, p or q"},
    };
}

bool is_mtx(const std::string& s) { return s.size() > 4 && s.substr(s.size() - 4) == ".mtx"; }

std::int64_t positive(const ExperimentConfig& cfg, const std::string& key) {
    const auto v = cfg.get_int(key);
    if (v < 1) throw ConfigError("key '" + key + "' must be positive");
    return v;
}

std::vector<index_t> positive_list(const ExperimentConfig& cfg, const std::string& key, bool allow_zero = false) {
    const auto v = cfg.get_int_list(key);
    if (v.empty()) throw ConfigError("key '" + key + "' must not be empty");
    for (auto x : v)
        if (x < (allow_zero ? 0 : 1)) throw ConfigError("key '" + key + "' has an out-of-range entry");
    return {v.begin(), v.end()};
}

bool complex_field(const ExperimentConfig& cfg) { return cfg.get_string("field") == "complex"; }

template <Scalar T>
SparseMatrixCSR<T> cast_sparse(const SparseMatrixCSR<double>& A) {
    if constexpr (std::is_same_v<T, double>) {
        return A;
    } else {
        std::vector<T> v(A.values().begin(), A.values().end());
        return SparseMatrixCSR<T>(A.rows(), A.cols(), A.row_ptr(), A.col_idx(), std::move(v));
    }
}

// Synthetic diagonal or Matrix Market input, as CSR in the requested field.
struct Source {
    std::string label;
    bool synthetic = false;
    RealVector diag;  // synthetic only
    std::variant<SparseMatrixCSR<double>, SparseMatrixCSR<cplx>> A;
};

Source load_source(const ExperimentConfig& cfg, bool want_complex) {
    const std::string& src = cfg.get_string("source");
    Source s;
    if (is_mtx(src)) {
        s.label = src;
        AnyMatrix m = read_matrix_market(src);
        const bool file_complex = std::holds_alternative<SparseMatrixCSR<cplx>>(m) || std::holds_alternative<Matrix<cplx>>(m);
        if (file_complex && !want_complex) throw ConfigError("key 'source' holds a complex matrix; set field = complex");
        std::visit(
            [&](auto& M) {
                using MT = std::decay_t<decltype(M)>;
                if constexpr (std::is_same_v<MT, SparseMatrixCSR<double>>) {
                    if (want_complex)
                        s.A = cast_sparse<cplx>(M);
                    else
                        s.A = std::move(M);
                } else if constexpr (std::is_same_v<MT, SparseMatrixCSR<cplx>>) {
                    s.A = std::move(M);
                } else if constexpr (std::is_same_v<MT, Matrix<double>>) {
                    if (want_complex)
                        s.A = SparseMatrixCSR<cplx>::from_dense(M.template cast<cplx>());
                    else
                        s.A = SparseMatrixCSR<double>::from_dense(M);
                } else {
                    s.A = SparseMatrixCSR<cplx>::from_dense(M);
                }
            },
            m);
        return s;
    }
    TestbedSpectrum spec;
    spec.kind = parse_testbed_kind(src);
    spec.R = cfg.get_int("R");
    spec.param = cfg.get_real("param");
    const index_t n = positive(cfg, "n");
    if (spec.R < 0 || spec.R > n) throw ConfigError("key 'R' must lie in [0, n]");
    if (!(spec.param > 0)) throw ConfigError("key 'param' must be positive");
    s.label = spec.label();
    s.synthetic = true;
    s.diag = testbed_diagonal(spec, n);
    const auto A = SparseMatrixCSR<double>::diagonal(s.diag);
    if (want_complex)
        s.A = cast_sparse<cplx>(A);
    else
        s.A = A;
    return s;
}

// Best rank-k error of a diagonal matrix.
double tail_norm(const RealVector& diag, index_t k) {
    std::vector<double> v(diag.data(), diag.data() + diag.size());
    std::sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    double s = 0;
    for (std::size_t i = std::size_t(std::min<index_t>(k, index_t(v.size()))); i < v.size(); ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

std::pair<std::uint64_t, std::uint64_t> pair_seeds(std::uint64_t seed, index_t k, index_t trial) {
    const RngStream base(seed, {std::uint64_t(k), std::uint64_t(trial)});
    return {base.child(0).next_u64(), base.child(1).next_u64()};
}

// ------------------------------------------------------------------ lowrank

std::vector<KeySpec> lowrank_keys() {
    return with(with(with(common_keys("10"), source_keys("poly")),
                     {{"algo", KeyType::String, "rsvd", "rsvd, gnouter or gnsvd"},
                      {"k", KeyType::IntList, "20", "sketch sizes"},
                      {"p", KeyType::Int, "0", "left sketch size for generalized Nystrom, 0 means ceil(1.5 k)"}}),
                family_keys());
}

template <Scalar T>
CsvTable lowrank_impl(const ExperimentConfig& cfg, const Source& src, const SketchSpec& spec, const std::string& algo,
                      const std::vector<index_t>& ks, index_t p_cfg, index_t trials) {
    const auto& A = std::get<SparseMatrixCSR<T>>(src.A);
    const index_t n = A.rows(), d = A.cols();
    const bool wide = n < d;
    const SparseMatrixCSR<T> At = wide ? A.adjoint() : SparseMatrixCSR<T>();
    const SparseMatrixCSR<T>& tall = wide ? At : A;
    for (index_t k : ks) {
        if (k > std::min(n, d)) throw ConfigError("key 'k' exceeds min(n, d)");
        if (algo != "rsvd") {
            const index_t p = p_cfg > 0 ? p_cfg : index_t(std::ceil(1.5 * double(k)));
            if (p < k || p > std::min(n, d)) throw ConfigError("key 'p' must satisfy k <= p <= min(n, d)");
        }
    }
    const double normA = A.frobenius_norm();

    struct Job {
        index_t k, trial;
    };
    std::vector<Job> jobs;
    for (index_t k : ks)
        for (index_t t = 0; t < trials; ++t) jobs.push_back({k, t});

    CsvTable table;
    table.schema = {"source", "algo", "family", "field", "n", "d", "k", "p", "trial", "seed",
                    "error", "rel_error", "optimal_error"};
    table.rows.resize(jobs.size());
    parallel_for(index_t(jobs.size()), [&](std::int64_t j) {
        const Job job = jobs[std::size_t(j)];
        const auto [s1, s2] = pair_seeds(cfg.seed(), job.k, job.trial);
        Matrix<T> L, R;
        index_t p = 0;
        if (algo == "rsvd") {
            const auto omega = make_test_matrix<T>(spec, d, job.k, s1);
            const auto f = rsvd(A, *omega);
            L = f.U * f.sigma.template cast<T>().asDiagonal();
            R = f.V;
        } else {
            p = p_cfg > 0 ? p_cfg : index_t(std::ceil(1.5 * double(job.k)));
            const auto omega = make_test_matrix<T>(spec, tall.cols(), job.k, s1);
            const auto psi = make_test_matrix<T>(spec, tall.rows(), p, s2);
            Matrix<T> Lt, Rt;
            if (algo == "gnouter") {
                const auto f = gen_nystrom_outer(tall, *omega, *psi);
                Lt = f.F;
                Rt = f.G;
            } else {
                const auto f = gen_nystrom_svd(tall, *omega, *psi);
                Lt = f.U * f.sigma.template cast<T>().asDiagonal();
                Rt = f.V;
            }
            // tall = A^* gives A ~ Rt Lt^*.
            if (wide) {
                L = Rt;
                R = Lt;
            } else {
                L = std::move(Lt);
                R = std::move(Rt);
            }
        }
        const double err = lowrank_error<T>(A, L, R);
        const CsvValue opt = src.synthetic ? CsvValue(tail_norm(src.diag, job.k)) : CsvValue(std::string());
        table.rows[std::size_t(j)] = {src.label,        algo, spec.describe(), std::string(to_string(field_of<T>)),
                                      std::int64_t(n),  std::int64_t(d), std::int64_t(job.k), std::int64_t(p),
                                      std::int64_t(job.trial), std::to_string(s1), err,
                                      normA > 0 ? err / normA : 0.0, opt};
    });
    return table;
}

CsvTable run_lowrank(const ExperimentConfig& cfg) {
    const SketchSpec spec = sketch_spec_from(cfg);
    const std::string algo = cfg.get_string("algo");
    if (algo != "rsvd" && algo != "gnouter" && algo != "gnsvd") throw ConfigError("key 'algo' must be rsvd, gnouter or gnsvd");
    const auto ks = positive_list(cfg, "k");
    const index_t p = cfg.get_int("p");
    if (p < 0) throw ConfigError("key 'p' must be nonnegative");
    const index_t trials = positive(cfg, "trials");
    const bool cx = complex_field(cfg);
    const Source src = load_source(cfg, cx);
    return cx ? lowrank_impl<cplx>(cfg, src, spec, algo, ks, p, trials)
              : lowrank_impl<double>(cfg, src, spec, algo, ks, p, trials);
}

// ------------------------------------------------------------------ lsq

std::vector<KeySpec> lsq_keys() {
    return with(with(common_keys("20"),
                     {{"n", KeyType::Int, "2000", "rows of A"},
                      {"d", KeyType::Int, "20", "columns of A"},
                      {"m", KeyType::Int, "1", "right-hand sides"},
                      {"rho", KeyType::Real, "1e-3", "Frobenius norm of the residual orthogonal to range(A)"},
                      {"p", KeyType::IntList, "80", "sketch sizes"}}),
                family_keys());
}

template <Scalar T>
CsvTable lsq_impl(const ExperimentConfig& cfg, const SketchSpec& spec, index_t n, index_t d, index_t m, double rho,
                  const std::vector<index_t>& ps, index_t trials) {
    RngStream rng(cfg.seed(), {0x6c7371ULL});
    auto gauss = [&](index_t r, index_t c) {
        Matrix<T> M(r, c);
        for (index_t j = 0; j < c; ++j)
            for (index_t i = 0; i < r; ++i) M(i, j) = draw_scalar<T>(is_complex_v<T> ? EntryDist::ComplexGaussian : EntryDist::RealGaussian, rng);
        return M;
    };
    const Matrix<T> A = gauss(n, d), X0 = gauss(d, m);
    const Matrix<T> Q = qr_econ(A).Q;
    Matrix<T> N = gauss(n, m);
    N -= Q * (Q.adjoint() * N);
    const double nn = N.norm();
    if (nn > 0) N *= rho / nn;
    const Matrix<T> B = A * X0 + N;
    const Matrix<T> Xopt = truncated_pinv_apply<T>(A, B);
    const double optimal = (A * Xopt - B).norm();

    struct Job {
        index_t p, trial;
    };
    std::vector<Job> jobs;
    for (index_t p : ps)
        for (index_t t = 0; t < trials; ++t) jobs.push_back({p, t});
    CsvTable table;
    table.schema = {"family", "field", "n", "d", "m", "p", "trial", "seed", "residual", "optimal", "ratio"};
    table.rows.resize(jobs.size());
    parallel_for(index_t(jobs.size()), [&](std::int64_t j) {
        const Job job = jobs[std::size_t(j)];
        const auto [s1, s2] = pair_seeds(cfg.seed(), job.p, job.trial);
        (void)s2;
        const auto psi = make_test_matrix<T>(spec, n, job.p, s1);
        const Matrix<T> X = sketch_and_solve(A, B, *psi);
        const double res = (A * X - B).norm();
        table.rows[std::size_t(j)] = {spec.describe(), std::string(to_string(field_of<T>)), std::int64_t(n),
                                      std::int64_t(d), std::int64_t(m), std::int64_t(job.p), std::int64_t(job.trial),
                                      std::to_string(s1), res, optimal, optimal > 0 ? res / optimal : NAN};
    });
    return table;
}

CsvTable run_lsq(const ExperimentConfig& cfg) {
    const SketchSpec spec = sketch_spec_from(cfg);
    const index_t n = positive(cfg, "n"), d = positive(cfg, "d"), m = positive(cfg, "m");
    if (d > n) throw ConfigError("key 'd' must not exceed n");
    const double rho = cfg.get_real("rho");
    if (rho < 0) throw ConfigError("key 'rho' must be nonnegative");
    const auto ps = positive_list(cfg, "p");
    for (auto p : ps)
        if (p > n) throw ConfigError("key 'p' must not exceed n");
    const index_t trials = positive(cfg, "trials");
    return complex_field(cfg) ? lsq_impl<cplx>(cfg, spec, n, d, m, rho, ps, trials)
                              : lsq_impl<double>(cfg, spec, n, d, m, rho, ps, trials);
}

// ------------------------------------------------------------------ nystrom

std::vector<KeySpec> nystrom_keys() {
    return with(with(with(common_keys("10"), source_keys("poly")), {{"k", KeyType::IntList, "20", "sketch sizes"}}),
                family_keys());
}

template <Scalar T>
CsvTable nystrom_impl(const ExperimentConfig& cfg, const Source& src, const SketchSpec& spec,
                      const std::vector<index_t>& ks, index_t trials) {
    const auto& A = std::get<SparseMatrixCSR<T>>(src.A);
    const index_t n = A.rows();
    if (A.cols() != n) throw ConfigError("key 'source' must be a square psd matrix");
    if (n > 4096) throw ConfigError("nystrom evaluates nuclear-norm errors densely and needs n <= 4096");
    for (auto k : ks)
        if (k > n) throw ConfigError("key 'k' exceeds n");
    const Matrix<T> Ad = A.to_dense();
    const double nuclearA = nuclear_norm(Ad);

    struct Job {
        index_t k, trial;
    };
    std::vector<Job> jobs;
    for (index_t k : ks)
        for (index_t t = 0; t < trials; ++t) jobs.push_back({k, t});
    CsvTable table;
    table.schema = {"source", "family", "field", "n", "k", "trial", "seed", "nuclear_error", "rel_nuclear_error",
                    "frobenius_error"};
    table.rows.resize(jobs.size());
    parallel_for(index_t(jobs.size()), [&](std::int64_t j) {
        const Job job = jobs[std::size_t(j)];
        const auto [s1, s2] = pair_seeds(cfg.seed(), job.k, job.trial);
        (void)s2;
        const auto omega = make_test_matrix<T>(spec, n, job.k, s1);
        const auto f = nystrom_psd(A, *omega);
        const Matrix<T> E = Ad - reconstruct(f);
        const RealVector ev = eigvalsh<T>(Matrix<T>((E + E.adjoint()) / 2));
        const double nuc = ev.cwiseAbs().sum();
        table.rows[std::size_t(j)] = {src.label,        spec.describe(),     std::string(to_string(field_of<T>)),
                                      std::int64_t(n),  std::int64_t(job.k), std::int64_t(job.trial),
                                      std::to_string(s1), nuc, nuclearA > 0 ? nuc / nuclearA : 0.0, E.norm()};
    });
    return table;
}

CsvTable run_nystrom(const ExperimentConfig& cfg) {
    const SketchSpec spec = sketch_spec_from(cfg);
    const auto ks = positive_list(cfg, "k");
    const index_t trials = positive(cfg, "trials");
    const bool cx = complex_field(cfg);
    const Source src = load_source(cfg, cx);
    return cx ? nystrom_impl<cplx>(cfg, src, spec, ks, trials) : nystrom_impl<double>(cfg, src, spec, ks, trials);
}

// ------------------------------------------------------------------ recover

std::vector<KeySpec> recover_keys() {
    return with(common_keys("100"), {{"n", KeyType::Int, "32", "Toeplitz dimension; the family has 2n-1 generators"},
                                     {"oversample", KeyType::Real, "6", "queries per generator, p = ceil(oversample d)"},
                                     {"rho", KeyType::Real, "0", "Frobenius norm of the non-Toeplitz perturbation"}});
}

CsvTable run_recover(const ExperimentConfig& cfg) {
    const index_t n = positive(cfg, "n");
    const double over = cfg.get_real("oversample");
    if (!(over >= 1)) throw ConfigError("key 'oversample' must be at least 1");
    const double rho = cfg.get_real("rho");
    if (rho < 0) throw ConfigError("key 'rho' must be nonnegative");
    const index_t trials = positive(cfg, "trials");
    const ToeplitzBasis<double> basis(n);
    const index_t d = basis.size();
    const index_t p = index_t(std::ceil(over * double(d)));

    CsvTable table;
    table.schema = {"n", "d", "p", "trial", "seed", "queries", "residual", "optimal", "ratio"};
    table.rows.resize(std::size_t(trials));
    parallel_for(trials, [&](std::int64_t t) {
        RngStream rng(cfg.seed(), {0x726563ULL, std::uint64_t(t)});
        Vector<double> c(d);
        for (index_t j = 0; j < d; ++j) c(j) = rng.normal();
        Matrix<double> B = basis.combine(c);
        if (rho > 0) {
            Matrix<double> N(n, n);
            for (index_t j = 0; j < n; ++j)
                for (index_t i = 0; i < n; ++i) N(i, j) = rng.normal();
            N -= basis.project(N);
            B += (rho / N.norm()) * N;
        }
        const double optimal = (B - basis.project(B)).norm();
        const std::uint64_t s = rng.next_u64();
        const auto res = matrix_recovery<double>(bilinear_oracle(B), basis, p, s);
        const double r = (B - res.estimate).norm();
        table.rows[std::size_t(t)] = {std::int64_t(n), std::int64_t(d), std::int64_t(p), std::int64_t(t),
                                      std::to_string(s), std::int64_t(res.queries), r, optimal,
                                      optimal > 0 ? r / optimal : NAN};
    });
    return table;
}

// ------------------------------------------------------------------ trace

std::vector<KeySpec> trace_keys() {
    auto fam = family_keys("khatrirao");
    return with(with(common_keys("30"),
                     {{"ell", KeyType::Int, "10", "spins"},
                      {"h", KeyType::Real, "10", "transverse field"},
                      {"beta", KeyType::Real, "4", "inverse temperature"},
                      {"t", KeyType::IntList, "600", "matvec budgets"},
                      {"estimators", KeyType::StringList, "gh,na-hutch++", "gh and/or na-hutch++"},
                      {"mode", KeyType::String, "auto", "operator evaluation: implicit, materialized or auto"}}),
                [&] {
                    // ell here is the chain length, so the tensor order key is renamed.
                    for (auto& k : fam)
                        if (k.name == "ell") k.name = "kr_ell";
                    return fam;
                }());
}

CsvTable run_trace(const ExperimentConfig& cfg) {
    PartitionConfig pc;
    pc.ell = int(cfg.get_int("ell"));
    if (pc.ell < 2 || pc.ell > 14) throw ConfigError("key 'ell' must lie in [2, 14]");
    pc.h = cfg.get_real("h");
    pc.beta = cfg.get_real("beta");
    if (!(pc.beta > 0)) throw ConfigError("key 'beta' must be positive");
    const auto ts = cfg.get_int_list("t");
    if (ts.empty()) throw ConfigError("key 't' must not be empty");
    pc.t_grid.assign(ts.begin(), ts.end());
    pc.estimators = cfg.get_string_list("estimators");
    for (const auto& e : pc.estimators)
        if (e != "gh" && e != "na-hutch++") throw ConfigError("key 'estimators' has unknown entry '" + e + "'");
    pc.trials = positive(cfg, "trials");
    pc.seed = cfg.seed();
    try {
        pc.mode = parse_operator_mode(cfg.get_string("mode"));
    } catch (const Error&) {
        throw ConfigError("key 'mode' has unknown value '" + cfg.get_string("mode") + "'");
    }
    // sketch_spec_from reads "ell"; map the renamed key through a copy.
    ExperimentConfig fam("trace", family_keys("khatrirao"));
    for (const auto& k : fam.keys()) fam.set(k.name, cfg.get_string(k.name == "ell" ? "kr_ell" : k.name));
    pc.family = sketch_spec_from(fam);
    if (complex_field(cfg)) throw ConfigError("key 'field' must be real for the partition function experiment");
    return partition_function_experiment(pc);
}

// ------------------------------------------------------------------ osi-diag

std::vector<KeySpec> osi_keys() {
    return with(with(common_keys("10"),
                     {{"r", KeyType::Int, "100", "subspace dimension"},
                      {"k", KeyType::Int, "200", "embedding dimension"},
                      {"d", KeyType::Int, "0", "ambient dimension, 0 picks the smallest valid one"},
                      {"subspace", KeyType::String, "adversarial", "adversarial, kron-gaussian or wht"}}),
                family_keys());
}

template <Scalar T>
CsvTable osi_impl(const ExperimentConfig& cfg, const SketchSpec& spec, index_t r, index_t k, index_t d,
                  const std::string& subspace, index_t trials) {
    SubspaceSource<T> Q;
    if (subspace == "adversarial") {
        const bool sparse = spec.family == Family::SparseStack || spec.family == Family::SparseUniform ||
                            spec.family == Family::SparseIID || spec.family == Family::SparseCol;
        if (sparse)
            Q = adversarial_Q_sparse<T>(d, r);
        else
            Q = adversarial_Q<T>(d, r);
    } else if (subspace == "wht") {
        Q = wht_columns_Q<T>(d, r);
    } else {
        index_t ell = 0, pw = 1;
        while (pw < d) {
            pw *= spec.d0;
            ++ell;
        }
        Q = kronecker_gaussian_Q<T>(spec.d0, ell, r, mix64(cfg.seed() ^ 0x6b72ULL));
    }
    return measure_osi<T>(factory_for<T>(spec), Q, k, trials, cfg.seed(), subspace).to_csv();
}

CsvTable run_osi(const ExperimentConfig& cfg) {
    const SketchSpec spec = sketch_spec_from(cfg);
    const index_t r = positive(cfg, "r"), k = positive(cfg, "k");
    index_t d = cfg.get_int("d");
    if (d < 0) throw ConfigError("key 'd' must be nonnegative");
    const std::string subspace = cfg.get_string("subspace");
    if (subspace == "adversarial") {
        if (d == 0) d = r;
    } else if (subspace == "wht") {
        if (d == 0)
            for (d = 1; d < r;) d *= 2;
        if (!is_power_of_two(d)) throw ConfigError("key 'd' must be a power of two for the wht subspace");
    } else if (subspace == "kron-gaussian") {
        if (spec.d0 < 2) throw ConfigError("key 'd0' must be at least 2 for the kron-gaussian subspace");
        index_t pw = 1;
        while (pw < std::max<index_t>(d, r)) pw *= spec.d0;
        if (d != 0 && d != pw) throw ConfigError("key 'd' must be a power of d0 for the kron-gaussian subspace");
        d = pw;
    } else {
        throw ConfigError("key 'subspace' has unknown value '" + subspace + "'");
    }
    if (r > d) throw ConfigError("key 'r' must not exceed d");
    const index_t trials = positive(cfg, "trials");
    return complex_field(cfg) ? osi_impl<cplx>(cfg, spec, r, k, d, subspace, trials)
                              : osi_impl<double>(cfg, spec, r, k, d, subspace, trials);
}

// ------------------------------------------------------------------ timing

std::vector<KeySpec> timing_keys() {
    return {
        {"seed", KeyType::Int, "1", "root seed"},
        {"output", KeyType::String, "-", "CSV path, '-' for standard output"},
        {"families", KeyType::StringList, "gaussian,sparsestack", "families to time"},
        {"n", KeyType::Int, "4096", "rows of A"},
        {"d", KeyType::Int, "0", "columns of A, 0 means n"},
        {"k", KeyType::IntList, "512", "sketch sizes"},
        {"zeta", KeyType::RealList, "4", "row sparsities for the sparse families"},
        {"reps", KeyType::Int, "10", "timed repetitions, at least 10"},
        {"warmup", KeyType::Int, "2", "discarded repetitions"},
    };
}

CsvTable run_timing_cmd(const ExperimentConfig& cfg) {
    TimingConfig tc;
    tc.n = cfg.get_int("n");
    tc.d = cfg.get_int("d");
    if (tc.n < 1 || tc.d < 0) throw ConfigError("key 'n' must be positive and 'd' nonnegative");
    const auto ks = cfg.get_int_list("k");
    for (auto k : ks)
        if (k < 1) throw ConfigError("key 'k' must hold positive values");
    tc.k_grid.assign(ks.begin(), ks.end());
    tc.reps = cfg.get_int("reps");
    if (tc.reps < 10) throw ConfigError("key 'reps' must be at least 10");
    tc.warmup = cfg.get_int("warmup");
    if (tc.warmup < 0) throw ConfigError("key 'warmup' must be nonnegative");
    tc.seed = cfg.seed();
    tc.families.clear();
    const auto zetas = cfg.get_real_list("zeta");
    for (const auto& name : cfg.get_string_list("families")) {
        Family f;
        try {
            f = parse_family(name);
        } catch (const Error&) {
            throw ConfigError("key 'families' has unknown entry '" + name + "'");
        }
        if (f == Family::SparseStack || f == Family::SparseUniform || f == Family::SparseIID) {
            for (double z : zetas) {
                SketchSpec s{f};
                s.zeta = z;
                tc.families.push_back(s);
            }
        } else {
            tc.families.push_back(SketchSpec{f});
        }
    }
    if (tc.families.empty()) throw ConfigError("key 'families' must not be empty");
    return run_timing(tc);
}

// ------------------------------------------------------------------ testbed

std::vector<KeySpec> testbed_keys() {
    return {
        {"kind", KeyType::String, "poly", "lowrank-noise, poly or exp"},
        {"n", KeyType::Int, "1024", "dimension"},
        {"R", KeyType::Int, "10", "leading rank"},
        {"param", KeyType::Real, "1", "eps, p or q"},
        {"output", KeyType::String, "-", "CSV path, '-' for standard output, or a .mtx path"},
    };
}

TestbedSpectrum testbed_from(const ExperimentConfig& cfg) {
    TestbedSpectrum s;
    s.kind = parse_testbed_kind(cfg.get_string("kind"));
    s.R = cfg.get_int("R");
    s.param = cfg.get_real("param");
    if (cfg.get_int("n") < 1) throw ConfigError("key 'n' must be positive");
    if (s.R < 0 || s.R > cfg.get_int("n")) throw ConfigError("key 'R' must lie in [0, n]");
    if (!(s.param > 0)) throw ConfigError("key 'param' must be positive");
    return s;
}

CsvTable run_testbed(const ExperimentConfig& cfg) {
    const TestbedSpectrum s = testbed_from(cfg);
    const RealVector d = testbed_diagonal(s, cfg.get_int("n"));
    CsvTable table;
    table.schema = {"i", "value"};
    for (index_t i = 0; i < d.size(); ++i) table.add({std::int64_t(i + 1), d(i)});
    return table;
}

// ------------------------------------------------------------------ error-ratio

std::vector<KeySpec> error_ratio_keys() {
    return with(with(common_keys("50"),
                     {{"spectra", KeyType::StringList, "default",
                       "testbed spectra as kind:param[:R], or 'default' for the twelve-spectrum testbed"},
                      {"mtx", KeyType::StringList, "", "additional Matrix Market inputs"},
                      {"n", KeyType::Int, "1024", "testbed dimension"},
                      {"R", KeyType::Int, "10", "testbed leading rank"},
                      {"k", KeyType::IntList, "20,50,100", "sketch sizes"}}),
                family_keys("sparsestack"));
}

CsvTable run_error_ratio_cmd(const ExperimentConfig& cfg) {
    ErrorRatioConfig ec;
    ec.structured = sketch_spec_from(cfg);
    if (complex_field(cfg)) throw ConfigError("key 'field' must be real for error-ratio");
    const index_t n = positive(cfg, "n");
    const index_t R = cfg.get_int("R");
    if (R < 0 || R > n) throw ConfigError("key 'R' must lie in [0, n]");
    ec.k_grid = positive_list(cfg, "k");
    ec.trials = positive(cfg, "trials");
    ec.seed = cfg.seed();
    std::vector<TestbedSpectrum> spectra;
    for (const auto& s : cfg.get_string_list("spectra")) {
        if (s == "default") {
            for (auto t : default_testbed()) {
                t.R = R;
                spectra.push_back(t);
            }
        } else {
            spectra.push_back(parse_spectrum(s, R));
        }
    }
    for (const auto& s : spectra)
        if (s.R > n || !(s.param > 0)) throw ConfigError("key 'spectra' has an invalid entry " + s.label());
    for (const auto& s : spectra) ec.inputs.push_back({s.label(), testbed_sparse(s, n)});
    for (const auto& path : cfg.get_string_list("mtx")) {
        AnyMatrix m = read_matrix_market(path);
        if (auto* sp = std::get_if<SparseMatrixCSR<double>>(&m))
            ec.inputs.push_back({path, std::move(*sp)});
        else if (auto* de = std::get_if<Matrix<double>>(&m))
            ec.inputs.push_back({path, SparseMatrixCSR<double>::from_dense(*de)});
        else
            throw ConfigError("key 'mtx' lists a complex matrix: " + path);
    }
    return run_error_ratio(ec);
}

struct Command {
    const char* name;
    const char* summary;
    std::vector<KeySpec> (*keys)();
    CsvTable (*run)(const ExperimentConfig&);
};

const std::vector<Command>& commands() {
    static const std::vector<Command> table{
        {"lowrank", "randomized SVD and generalized Nystrom errors against the optimal rank-k error", lowrank_keys,
         run_lowrank},
        {"lsq", "sketch-and-solve least squares residuals", lsq_keys, run_lsq},
        {"nystrom", "Nystrom approximation of psd inputs", nystrom_keys, run_nystrom},
        {"recover", "matrix recovery from bilinear queries", recover_keys, run_recover},
        {"trace", "TFIM partition function by Girard-Hutchinson and NA-Hutch++", trace_keys, run_trace},
        {"osi-diag", "injectivity and dilation of Omega^* Q over trials", osi_keys, run_osi},
        {"timing", "wall-clock time to form A Omega", timing_keys, run_timing_cmd},
        {"testbed", "write a synthetic testbed matrix", testbed_keys, run_testbed},
        {"error-ratio", "paired structured / Gaussian low-rank error ratios", error_ratio_keys,
         run_error_ratio_cmd},
    };
    return table;
}

}  // namespace

std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (const auto& c : commands()) out.push_back(c.name);
    return out;
}

std::string command_summary(const std::string& command) {
    for (const auto& c : commands())
        if (command == c.name) return c.summary;
    throw ConfigError("unknown command '" + command + "'");
}

ExperimentConfig make_config(const std::string& command) {
    for (const auto& c : commands())
        if (command == c.name) return ExperimentConfig(command, c.keys());
    throw ConfigError("unknown command '" + command + "'");
}

CsvTable run_command(const ExperimentConfig& cfg) {
    for (const auto& c : commands())
        if (cfg.command() == c.name) return c.run(cfg);
    throw ConfigError("unknown command '" + cfg.command() + "'");
}

void write_command_output(const ExperimentConfig& cfg, const CsvTable& table) {
    const std::string& out = cfg.get_string("output");
    if (cfg.command() == "testbed" && is_mtx(out)) {
        write_matrix_market(out, testbed_sparse(testbed_from(cfg), cfg.get_int("n")));
        return;
    }
    if (out == "-")
        write_csv(std::cout, table);
    else
        write_csv(out, table);
}

}  // namespace sketchkit
