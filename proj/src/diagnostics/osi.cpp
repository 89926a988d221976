#include "sketchkit/diagnostics/osi.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/parallel.hpp"
#include "sketchkit/core/rng.hpp"
#include "sketchkit/core/stats.hpp"
#include "sketchkit/diagnostics/subspaces.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sketchkit {

namespace {

// Past this many columns the Gram matrix replaces the SVD.
constexpr index_t gram_threshold = 200;
// Past this many columns a sparse Q with a sparse family goes to Lanczos.
constexpr index_t lanczos_threshold = 2000;

template <Scalar T>
void check_orthonormal(const Matrix<T>& Q) {
    if (orthonormality_defect(Q) > 1e-8) throw PreconditionError("injectivity_dilation: Q is not orthonormal");
}

template <Scalar T>
InjectivityDilation extremes_of(const Matrix<T>& W) {
    const index_t k = W.rows(), r = W.cols();
    InjectivityDilation out;
    out.frob_sq = W.squaredNorm();
    if (r == 0) return out;
    const double floor = double(std::max(k, r)) * eps_mach;
    if (r >= gram_threshold) {
        const Matrix<T> G = W.adjoint() * W;
        const RealVector lam = eigvalsh(G);
        out.beta = std::max(lam(lam.size() - 1), 0.0);
        out.alpha = k < r || lam(0) <= floor * out.beta ? 0.0 : lam(0);
    } else {
        const RealVector s = singular_values(W);
        const double smax = s.size() ? s(0) : 0.0;
        out.beta = smax * smax;
        const double smin = k < r ? 0.0 : s(s.size() - 1);
        out.alpha = smin <= floor * smax ? 0.0 : smin * smin;
    }
    return out;
}

// ||Omega^* Q||_F^2 for sparse Omega and Q, via the rows of Q^* Omega.
template <Scalar T>
double sparse_frob_sq(const SparseMatrixCSR<T>& omega, const SparseMatrixCSR<T>& Q) {
    const SparseMatrixCSR<T> Qa = Q.adjoint();
    std::vector<T> acc(std::size_t(omega.cols()), T(0));
    std::vector<index_t> touched;
    std::vector<char> mark(std::size_t(omega.cols()), 0);
    double total = 0;
    for (index_t i = 0; i < Qa.rows(); ++i) {
        touched.clear();
        for (index_t p = Qa.row_ptr()[std::size_t(i)]; p < Qa.row_ptr()[std::size_t(i + 1)]; ++p) {
            const index_t l = Qa.col_idx()[std::size_t(p)];
            const T q = Qa.values()[std::size_t(p)];
            for (index_t t = omega.row_ptr()[std::size_t(l)]; t < omega.row_ptr()[std::size_t(l + 1)]; ++t) {
                const index_t c = omega.col_idx()[std::size_t(t)];
                if (!mark[std::size_t(c)]) {
                    mark[std::size_t(c)] = 1;
                    touched.push_back(c);
                }
                acc[std::size_t(c)] += q * omega.values()[std::size_t(t)];
            }
        }
        for (index_t c : touched) {
            total += abs2(acc[std::size_t(c)]);
            acc[std::size_t(c)] = T(0);
            mark[std::size_t(c)] = 0;
        }
    }
    return total;
}

}  // namespace

template <Scalar T>
InjectivityDilation injectivity_dilation(const TestMatrix<T>& tm, const Matrix<T>& Q) {
    require_dims(Q.rows() == tm.rows(), "injectivity_dilation: Q must have d rows");
    check_orthonormal(Q);
    return extremes_of<T>(tm.apply_adjoint(Q));
}

template <Scalar T>
InjectivityDilation injectivity_dilation(const TestMatrix<T>& tm, const SparseMatrixCSR<T>& Q) {
    require_dims(Q.rows() == tm.rows(), "injectivity_dilation: Q must have d rows");
    const auto* sparse = dynamic_cast<const SparseTM<T>*>(&tm);
    const index_t r = Q.cols(), k = tm.cols();
    if (!sparse || r <= lanczos_threshold) return injectivity_dilation(tm, Q.to_dense());

    // Orthonormality of a sparse Q: the columns' Gram matrix is itself sparse.
    const SparseMatrixCSR<T> Qa = Q.adjoint();
    {
        double defect = 0;
        Matrix<T> e = Matrix<T>::Zero(r, 1);
        for (index_t j = 0; j < r; ++j) {
            Matrix<T> qj = Matrix<T>::Zero(Q.rows(), 1);
            for (index_t p = Qa.row_ptr()[std::size_t(j)]; p < Qa.row_ptr()[std::size_t(j + 1)]; ++p)
                qj(Qa.col_idx()[std::size_t(p)], 0) = conj(Qa.values()[std::size_t(p)]);
            e = Q.adjoint_multiply(qj);
            e(j, 0) -= T(1);
            defect += e.squaredNorm();
        }
        if (std::sqrt(defect) > 1e-8) throw PreconditionError("injectivity_dilation: Q is not orthonormal");
    }

    const SparseMatrixCSR<T>& omega = sparse->sparse();
    auto gram = [&](const Vector<T>& x) -> Vector<T> {
        Matrix<T> y = Q.multiply(x);
        y = omega.adjoint_multiply(y);
        y = omega.multiply(y);
        return Q.adjoint_multiply(y).col(0);
    };
    const LanczosResult lz = lanczos_extremes<T>(gram, r, mix64(tm.seed() ^ 0x6c616e637a6f73ULL));
    if (!lz.converged) throw NumericalError("injectivity_dilation: Lanczos did not converge");
    InjectivityDilation out;
    out.frob_sq = sparse_frob_sq(omega, Q);
    out.beta = std::max(lz.lambda_max, 0.0);
    const double floor = double(std::max(k, r)) * eps_mach;
    out.alpha = k < r || lz.lambda_min <= floor * out.beta ? 0.0 : lz.lambda_min;
    return out;
}

template <Scalar T>
LanczosResult lanczos_extremes(const std::function<Vector<T>(const Vector<T>&)>& op, index_t n, std::uint64_t seed,
                               double tol, index_t max_iter) {
    LanczosResult out;
    if (n <= 0) {
        out.converged = true;
        return out;
    }
    const index_t m_max = std::min(n, max_iter);
    index_t cap = std::min<index_t>(m_max, 128);
    Matrix<T> V(n, cap);
    std::vector<double> a, b;

    RngStream rng(seed);
    Vector<T> v(n);
    for (index_t i = 0; i < n; ++i) v(i) = T(rng.normal());
    V.col(0) = v / v.norm();

    index_t next_check = 10;
    double anorm = 0;
    for (index_t j = 0; j < m_max; ++j) {
        Vector<T> w = op(V.col(j));
        const double aj = real_part(T(V.col(j).dot(w)));
        a.push_back(aj);
        // Two passes of classical Gram-Schmidt against the whole basis.
        for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
        const double bj = w.norm();

        const index_t m = j + 1;
        anorm = std::max(anorm, std::abs(aj) + bj);
        const bool breakdown = bj <= 1e-13 * anorm;
        if (m >= next_check || m == m_max || breakdown) {
            next_check = m + std::max<index_t>(10, m / 10);
            RealVector diag = Eigen::Map<RealVector>(a.data(), m);
            RealVector sub = m > 1 ? RealVector(Eigen::Map<RealVector>(b.data(), m - 1)) : RealVector(0);
            Eigen::SelfAdjointEigenSolver<RealMatrix> es;
            es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const RealVector& th = es.eigenvalues();
            const RealMatrix& S = es.eigenvectors();
            out.lambda_min = th(0);
            out.lambda_max = th(m - 1);
            out.iterations = m;
            const double scale = std::max(std::abs(out.lambda_min), std::abs(out.lambda_max));
            const double rmin = std::abs(bj * S(m - 1, 0)), rmax = std::abs(bj * S(m - 1, m - 1));
            if (breakdown || m == n || (rmin <= tol * scale && rmax <= tol * scale)) {
                out.converged = true;
                return out;
            }
            if (m == m_max) return out;
        }
        if (m == cap) {
            cap = std::min(m_max, 2 * cap);
            V.conservativeResize(n, cap);
        }
        b.push_back(bj);
        V.col(m) = w / bj;
    }
    return out;
}

bool OsiReport::isotropy_ok(double z) const {
    return std::abs(isotropy_mean - 1) <= z * isotropy_stderr + 1e-12;
}

CsvTable OsiReport::to_csv() const {
    CsvTable t;
    t.schema = {"family", "r", "k", "trial", "alpha", "beta"};
    for (std::size_t i = 0; i < alpha.size(); ++i)
        t.add({family, std::int64_t(r), std::int64_t(k), std::int64_t(i), alpha[i], beta[i]});
    return t;
}

std::uint64_t trial_seed(std::uint64_t root, index_t trial) {
    return RngStream(root, {0x6f7369ULL, std::uint64_t(trial)}).next_u64();
}

template <Scalar T>
OsiReport measure_osi(const TestMatrixFactory<T>& factory, const SubspaceSource<T>& Q, index_t k, index_t trials,
                      std::uint64_t seed, const std::string& subspace_label, double failure_quantile) {
    if (trials < 1) throw PreconditionError("measure_osi requires at least one trial");
    if (k < 1) throw PreconditionError("measure_osi requires k >= 1");
    const index_t d = std::visit([](const auto& q) { return index_t(q.rows()); }, Q);
    const index_t r = std::visit([](const auto& q) { return index_t(q.cols()); }, Q);
    if (r < 1) throw PreconditionError("measure_osi requires r >= 1");

    OsiReport rep;
    rep.subspace = subspace_label;
    rep.d = d;
    rep.r = r;
    rep.k = k;
    rep.seed = seed;
    rep.trial_seeds.resize(std::size_t(trials));
    rep.alpha.resize(std::size_t(trials));
    rep.beta.resize(std::size_t(trials));
    std::vector<double> iso(static_cast<std::size_t>(trials));
    std::vector<std::string> fam(static_cast<std::size_t>(trials)), params(static_cast<std::size_t>(trials));

    parallel_for(trials, [&](std::int64_t i) {
        const std::uint64_t s = trial_seed(seed, i);
        const auto tm = factory(d, k, s);
        const InjectivityDilation res = std::visit([&](const auto& q) { return injectivity_dilation(*tm, q); }, Q);
        const std::size_t u = std::size_t(i);
        rep.trial_seeds[u] = s;
        rep.alpha[u] = res.alpha;
        rep.beta[u] = res.beta;
        iso[u] = res.frob_sq / double(r);
        fam[u] = to_string(tm->family());
        params[u] = tm->describe();
    });

    rep.family = fam[0];
    rep.params = params[0];
    rep.isotropy_mean = mean(iso);
    rep.isotropy_stderr = trials > 1 ? std_error(iso) : 0.0;
    rep.alpha_q10 = quantile(rep.alpha, 0.1);
    rep.alpha_q50 = quantile(rep.alpha, 0.5);
    rep.alpha_q90 = quantile(rep.alpha, 0.9);
    rep.beta_q10 = quantile(rep.beta, 0.1);
    rep.beta_q50 = quantile(rep.beta, 0.5);
    rep.beta_q90 = quantile(rep.beta, 0.9);
    rep.certified_alpha = quantile(rep.alpha, failure_quantile);
    return rep;
}

template <Scalar T>
OsiReport osi_certify(const TestMatrixFactory<T>& factory, const SubspaceSource<T>& Q, index_t k, index_t trials,
                      std::uint64_t seed, double failure_quantile, const std::string& subspace_label) {
    if (trials < 20) throw PreconditionError("osi_certify requires at least 20 trials");
    if (!(failure_quantile > 0 && failure_quantile < 1))
        throw PreconditionError("osi_certify: failure quantile must lie in (0, 1)");
    return measure_osi(factory, Q, k, trials, seed, subspace_label, failure_quantile);
}

#define SKETCHKIT_INSTANTIATE(T)                                                                                  \
    template InjectivityDilation injectivity_dilation<T>(const TestMatrix<T>&, const Matrix<T>&);                 \
    template InjectivityDilation injectivity_dilation<T>(const TestMatrix<T>&, const SparseMatrixCSR<T>&);        \
    template LanczosResult lanczos_extremes<T>(const std::function<Vector<T>(const Vector<T>&)>&, index_t,        \
                                               std::uint64_t, double, index_t);                                   \
    template OsiReport measure_osi<T>(const TestMatrixFactory<T>&, const SubspaceSource<T>&, index_t, index_t,    \
                                      std::uint64_t, const std::string&, double);                                 \
    template OsiReport osi_certify<T>(const TestMatrixFactory<T>&, const SubspaceSource<T>&, index_t, index_t,    \
                                      std::uint64_t, double, const std::string&);
SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)
#undef SKETCHKIT_INSTANTIATE

}  // namespace sketchkit
