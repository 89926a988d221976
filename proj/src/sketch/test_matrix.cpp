#include "sketchkit/sketch/test_matrix.hpp"

#include "sketchkit/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sketchkit {

const char* to_string(Family f) {
    switch (f) {
        case Family::Gaussian:
            return "gaussian";
        case Family::SparseStack:
            return "sparsestack";
        case Family::SparseUniform:
            return "sparseuniform";
        case Family::SparseIID:
            return "sparseiid";
        case Family::SparseCol:
            return "sparsecol";
        case Family::SparseRTT:
            return "sparsertt";
        case Family::KhatriRao:
            return "khatrirao";
        default:
            return "explicit";
    }
}

Family parse_family(const std::string& s) {
    for (int i = 0; i <= int(Family::KhatriRao); ++i)
        if (s == to_string(Family(i))) return Family(i);
    throw ConfigError("unknown test-matrix family '" + s + "'");
}

// ---------------------------------------------------------------- base

template <Scalar T>
TestMatrix<T>::TestMatrix(index_t d, index_t k, std::uint64_t seed) : d_(d), k_(k), seed_(seed) {
    require_dims(d >= 1 && k >= 1, "test matrix dimensions must be positive");
}

template <Scalar T>
std::string TestMatrix<T>::describe() const {
    return to_string(family());
}

template <Scalar T>
void TestMatrix<T>::check_right(index_t cols) const {
    require_dims(cols == d_, "apply_right: A has " + std::to_string(cols) + " columns, test matrix has " +
                                 std::to_string(d_) + " rows");
}

template <Scalar T>
void TestMatrix<T>::check_adjoint(index_t rows) const {
    require_dims(rows == d_, "apply_adjoint: B has " + std::to_string(rows) + " rows, test matrix has " +
                                 std::to_string(d_) + " rows");
}

template <Scalar T>
Matrix<T> TestMatrix<T>::apply_right(const SparseMatrixCSR<T>& A) const {
    check_right(A.cols());
    return A.multiply(materialize());
}

// ---------------------------------------------------------------- Gaussian

template <Scalar T>
GaussianTM<T>::GaussianTM(index_t d, index_t k, std::uint64_t seed) : TestMatrix<T>(d, k, seed), omega_(d, k) {
    const RngStream root(seed);
    const double s = 1.0 / std::sqrt(double(k));
    const EntryDist dist = is_complex_v<T> ? EntryDist::ComplexGaussian : EntryDist::RealGaussian;
    for (index_t j = 0; j < k; ++j) {
        RngStream rng = root.child(std::uint64_t(j));
        for (index_t i = 0; i < d; ++i) omega_(i, j) = draw_scalar<T>(dist, rng) * s;
    }
}

template <Scalar T>
Matrix<T> GaussianTM<T>::apply_right(const Matrix<T>& A) const {
    this->check_right(A.cols());
    return A * omega_;
}

template <Scalar T>
Matrix<T> GaussianTM<T>::apply_right(const SparseMatrixCSR<T>& A) const {
    this->check_right(A.cols());
    return A.multiply(omega_);
}

template <Scalar T>
Matrix<T> GaussianTM<T>::apply_adjoint(const Matrix<T>& B) const {
    this->check_adjoint(B.rows());
    return omega_.adjoint() * B;
}

// ---------------------------------------------------------------- Explicit

template <Scalar T>
ExplicitTM<T>::ExplicitTM(Matrix<T> omega)
    : TestMatrix<T>(omega.rows(), omega.cols(), 0), omega_(std::move(omega)) {}

template <Scalar T>
Matrix<T> ExplicitTM<T>::apply_right(const Matrix<T>& A) const {
    this->check_right(A.cols());
    return A * omega_;
}

template <Scalar T>
Matrix<T> ExplicitTM<T>::apply_right(const SparseMatrixCSR<T>& A) const {
    this->check_right(A.cols());
    return A.multiply(omega_);
}

template <Scalar T>
Matrix<T> ExplicitTM<T>::apply_adjoint(const Matrix<T>& B) const {
    this->check_adjoint(B.rows());
    return omega_.adjoint() * B;
}

// ---------------------------------------------------------------- sparse base

template <Scalar T>
Matrix<T> SparseTM<T>::apply_right(const Matrix<T>& A) const {
    this->check_right(A.cols());
    return omega_.right_multiply(A);
}

template <Scalar T>
Matrix<T> SparseTM<T>::apply_right(const SparseMatrixCSR<T>& A) const {
    this->check_right(A.cols());
    Matrix<T> Y = Matrix<T>::Zero(A.rows(), this->k_);
    const auto& ap = A.row_ptr();
    const auto& ai = A.col_idx();
    const auto& av = A.values();
    const auto& op = omega_.row_ptr();
    const auto& oi = omega_.col_idx();
    const auto& ov = omega_.values();
    for (index_t r = 0; r < A.rows(); ++r)
        for (index_t p = ap[r]; p < ap[r + 1]; ++p) {
            const index_t i = ai[p];
            const T a = av[p];
            for (index_t q = op[i]; q < op[i + 1]; ++q) Y(r, oi[q]) += a * ov[q];
        }
    return Y;
}

template <Scalar T>
Matrix<T> SparseTM<T>::apply_adjoint(const Matrix<T>& B) const {
    this->check_adjoint(B.rows());
    return omega_.adjoint_multiply(B);
}

namespace {

// Samples m distinct values from {0..n-1} by partial Fisher-Yates. The
// workspace is restored to the identity permutation before returning.
std::vector<index_t> sample_without_replacement(index_t n, index_t m, RngStream& rng, std::vector<index_t>& ws) {
    if (index_t(ws.size()) != n) {
        ws.resize(std::size_t(n));
        std::iota(ws.begin(), ws.end(), index_t(0));
    }
    std::vector<index_t> picks(static_cast<std::size_t>(m)), swaps(static_cast<std::size_t>(m));
    for (index_t j = 0; j < m; ++j) {
        const index_t r = j + index_t(rng.below(std::uint64_t(n - j)));
        std::swap(ws[j], ws[r]);
        swaps[j] = r;
        picks[j] = ws[j];
    }
    for (index_t j = m - 1; j >= 0; --j) std::swap(ws[j], ws[swaps[j]]);
    return picks;
}

template <Scalar T>
void check_entry_dist(EntryDist dist, bool allow_real_rademacher_only_in_real) {
    const bool ok = dist == EntryDist::RealRademacher || dist == EntryDist::ComplexRademacher ||
                    dist == EntryDist::Steinhaus;
    if (!ok) throw PreconditionError(std::string("unsupported entry distribution ") + to_string(dist));
    if (!is_complex_v<T> && allow_real_rademacher_only_in_real && dist != EntryDist::RealRademacher)
        throw PreconditionError("real test matrices use Rademacher entries");
}

}  // namespace

// ---------------------------------------------------------------- SparseStack

template <Scalar T>
SparseStackTM<T>::SparseStackTM(index_t d, index_t zeta, index_t b, std::uint64_t seed, EntryDist dist)
    : SparseStackTM(d, zeta * b, zeta, seed, dist, true) {
    require_dims(b >= 1, "SparseStack needs b >= 1");
}

template <Scalar T>
std::unique_ptr<SparseStackTM<T>> SparseStackTM<T>::balanced(index_t d, index_t k, index_t zeta, std::uint64_t seed,
                                                              EntryDist dist) {
    return std::unique_ptr<SparseStackTM<T>>(new SparseStackTM<T>(d, k, zeta, seed, dist, true));
}

template <Scalar T>
index_t SparseStackTM<T>::block_start(index_t c) const {
    const index_t b = this->k_ / zeta_, extra = this->k_ % zeta_;
    return c * b + std::min(c, extra);
}

template <Scalar T>
SparseStackTM<T>::SparseStackTM(index_t d, index_t k, index_t zeta, std::uint64_t seed, EntryDist dist, bool)
    : SparseTM<T>(d, k, seed), zeta_(zeta), dist_(dist) {
    require_dims(zeta >= 1 && k >= zeta, "SparseStack needs 1 <= zeta <= k");
    check_entry_dist<T>(dist, true);
    const RngStream root(seed);
    const double s = 1.0 / std::sqrt(double(zeta));
    std::vector<index_t> ptr(std::size_t(d + 1)), idx(std::size_t(d * zeta));
    std::vector<T> val(std::size_t(d * zeta));
    for (index_t i = 0; i < d; ++i) {
        RngStream rng = root.child(std::uint64_t(i));
        ptr[i + 1] = (i + 1) * zeta;
        for (index_t c = 0; c < zeta; ++c) {
            const index_t q = i * zeta + c;
            const index_t lo = block_start(c), len = block_start(c + 1) - lo;
            idx[q] = lo + index_t(rng.below(std::uint64_t(len)));
            val[q] = draw_scalar<T>(dist, rng) * s;
        }
    }
    this->omega_ = SparseMatrixCSR<T>(d, k, std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
std::string SparseStackTM<T>::describe() const {
    std::ostringstream s;
    s << "sparsestack(zeta=" << zeta_ << ",k=" << this->k_ << ",dist=" << to_string(dist_) << ")";
    return s.str();
}

// ---------------------------------------------------------------- SparseUniform

template <Scalar T>
SparseUniformTM<T>::SparseUniformTM(index_t d, index_t k, index_t zeta, std::uint64_t seed, EntryDist dist)
    : SparseTM<T>(d, k, seed), zeta_(zeta), dist_(dist) {
    require_dims(zeta >= 1 && zeta <= k, "SparseUniform needs 1 <= zeta <= k");
    check_entry_dist<T>(dist, true);
    const RngStream root(seed);
    const double s = 1.0 / std::sqrt(double(zeta));
    std::vector<index_t> ptr(std::size_t(d + 1)), idx;
    std::vector<T> val;
    idx.reserve(std::size_t(d * zeta));
    val.reserve(std::size_t(d * zeta));
    std::vector<index_t> ws;
    for (index_t i = 0; i < d; ++i) {
        RngStream rng = root.child(std::uint64_t(i));
        auto cols = sample_without_replacement(k, zeta, rng, ws);
        std::sort(cols.begin(), cols.end());
        for (index_t c : cols) {
            idx.push_back(c);
            val.push_back(draw_scalar<T>(dist, rng) * s);
        }
        ptr[i + 1] = index_t(idx.size());
    }
    this->omega_ = SparseMatrixCSR<T>(d, k, std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
std::string SparseUniformTM<T>::describe() const {
    std::ostringstream s;
    s << "sparseuniform(zeta=" << zeta_ << ",dist=" << to_string(dist_) << ")";
    return s.str();
}

// ---------------------------------------------------------------- SparseIID

template <Scalar T>
SparseIidTM<T>::SparseIidTM(index_t d, index_t k, double zeta, std::uint64_t seed, EntryDist dist)
    : SparseTM<T>(d, k, seed), zeta_(zeta), dist_(dist) {
    if (!(zeta > 0 && zeta <= double(k))) throw DimensionError("SparseIID needs 0 < zeta <= k");
    check_entry_dist<T>(dist, true);
    const RngStream root(seed);
    const double s = 1.0 / std::sqrt(zeta);
    const double p = zeta / double(k);
    const double log_q = std::log1p(-p);
    std::vector<index_t> ptr(std::size_t(d + 1)), idx;
    std::vector<T> val;
    for (index_t i = 0; i < d; ++i) {
        RngStream rng = root.child(std::uint64_t(i));
        if (p >= 1) {
            for (index_t c = 0; c < k; ++c) {
                idx.push_back(c);
                val.push_back(draw_scalar<T>(dist, rng) * s);
            }
        } else {
            // Gaps between successes are geometric.
            double pos = -1;
            for (;;) {
                pos += std::floor(std::log(rng.uniform_open()) / log_q) + 1;
                if (pos >= double(k)) break;
                idx.push_back(index_t(pos));
                val.push_back(draw_scalar<T>(dist, rng) * s);
            }
        }
        ptr[i + 1] = index_t(idx.size());
    }
    this->omega_ = SparseMatrixCSR<T>(d, k, std::move(ptr), std::move(idx), std::move(val));
}

template <Scalar T>
std::string SparseIidTM<T>::describe() const {
    std::ostringstream s;
    s << "sparseiid(zeta=" << zeta_ << ",dist=" << to_string(dist_) << ")";
    return s.str();
}

// ---------------------------------------------------------------- SparseCol

template <Scalar T>
SparseColTM<T>::SparseColTM(index_t d, index_t k, index_t xi, std::uint64_t seed) : SparseTM<T>(d, k, seed), xi_(xi) {
    require_dims(xi >= 1 && xi <= d, "SparseCol needs 1 <= xi <= d");
    const RngStream root(seed);
    const double s = std::sqrt(double(d) / double(xi)) / std::sqrt(double(k));
    std::vector<Triplet<T>> e;
    e.reserve(std::size_t(k * xi));
    std::vector<index_t> ws;
    for (index_t j = 0; j < k; ++j) {
        RngStream rng = root.child(std::uint64_t(j));
        const auto rows = sample_without_replacement(d, xi, rng, ws);
        for (index_t i : rows) e.push_back({i, j, T(rng.rademacher() * s)});
    }
    this->omega_ = SparseMatrixCSR<T>::from_triplets(d, k, std::move(e));
}

template <Scalar T>
std::string SparseColTM<T>::describe() const {
    return "sparsecol(xi=" + std::to_string(xi_) + ")";
}

// ---------------------------------------------------------------- SparseRTT

template <Scalar T>
Transform SparseRttTM<T>::default_transform(index_t) {
    return is_complex_v<T> ? Transform::DFT : Transform::DCT;
}

template <Scalar T>
index_t SparseRttTM<T>::default_xi(index_t k) {
    return std::max<index_t>(1, index_t(std::ceil(1.5 * std::log(double(k)))));
}

template <Scalar T>
SparseRttTM<T>::SparseRttTM(index_t d, index_t k, index_t xi, Transform transform, EntryDist diag,
                            std::uint64_t seed)
    : TestMatrix<T>(d, k, seed), xi_(xi), transform_(transform), diag_dist_(diag), diag_(d) {
    if (transform == Transform::WHT && !is_power_of_two(d)) throw DimensionError("WHT needs d to be a power of two");
    if (transform == Transform::DFT && !is_complex_v<T>) throw PreconditionError("the DFT needs the complex field");
    if (diag != EntryDist::RealRademacher && diag != EntryDist::UniformSymmetric && diag != EntryDist::Steinhaus)
        throw PreconditionError(std::string("unsupported diagonal distribution ") + to_string(diag));
    const RngStream root(seed);
    RngStream rng = root.child(0);
    for (index_t i = 0; i < d; ++i) diag_(i) = draw_scalar<T>(diag, rng);
    sampler_ = std::make_unique<SparseColTM<T>>(d, k, xi, root.child(1).next_u64());
}

template <Scalar T>
std::string SparseRttTM<T>::describe() const {
    std::ostringstream s;
    s << "sparsertt(xi=" << xi_ << ",transform=" << to_string(transform_) << ",diag=" << to_string(diag_dist_) << ")";
    return s.str();
}

template <Scalar T>
Matrix<T> SparseRttTM<T>::apply_right(const Matrix<T>& A) const {
    this->check_right(A.cols());
    // (A D F)^T = F^T (A D)^T, transformed column by column.
    Matrix<T> Z = (A * diag_.asDiagonal()).transpose();
    transform_columns(transform_, TransformOp::Transpose, Z);
    // S has real entries, so S^T W = S^* W.
    return sampler_->apply_adjoint(Z).transpose();
}

template <Scalar T>
Matrix<T> SparseRttTM<T>::apply_adjoint(const Matrix<T>& B) const {
    this->check_adjoint(B.rows());
    Matrix<T> Z = diag_.conjugate().asDiagonal() * B;
    transform_columns(transform_, TransformOp::Adjoint, Z);
    return sampler_->apply_adjoint(Z);
}

template <Scalar T>
Matrix<T> SparseRttTM<T>::materialize() const {
    Matrix<T> W = sampler_->materialize();
    transform_columns(transform_, TransformOp::Forward, W);
    return diag_.asDiagonal() * W;
}

// ---------------------------------------------------------------- Kronecker helpers

namespace {

template <Scalar T, bool Conjugate>
T kron_reduce(const std::vector<Vector<T>>& factors, const Vector<T>& v) {
    const index_t ell = index_t(factors.size());
    require_dims(ell >= 1, "Kronecker product needs at least one factor");
    const index_t d0 = factors[0].size();
    index_t full = 1;
    for (const auto& f : factors) {
        require_dims(f.size() == d0, "Kronecker factors must share one length");
        full *= d0;
    }
    require_dims(v.size() <= full, "vector longer than the Kronecker product");
    std::vector<T> w(std::size_t(full), T(0));
    for (index_t i = 0; i < v.size(); ++i) w[i] = v(i);
    // Contract the last (least significant) mode first; the working length
    // shrinks by d0 each step.
    index_t len = full;
    for (index_t q = ell - 1; q >= 0; --q) {
        const index_t outer = len / d0;
        const auto& f = factors[std::size_t(q)];
        for (index_t o = 0; o < outer; ++o) {
            T s(0);
            for (index_t a = 0; a < d0; ++a) {
                const T fa = Conjugate ? sketchkit::conj(f(a)) : f(a);
                s += fa * w[o * d0 + a];
            }
            w[o] = s;
        }
        len = outer;
    }
    return w[0];
}

}  // namespace

template <Scalar T>
T kron_inner(const std::vector<Vector<T>>& factors, const Vector<T>& v) {
    return kron_reduce<T, true>(factors, v);
}

template <Scalar T>
T kron_contract(const std::vector<Vector<T>>& factors, const Vector<T>& v) {
    return kron_reduce<T, false>(factors, v);
}

template <Scalar T>
Vector<T> kron_expand(const std::vector<Vector<T>>& factors, index_t length) {
    require_dims(!factors.empty(), "Kronecker product needs at least one factor");
    Vector<T> out = factors[0];
    for (std::size_t q = 1; q < factors.size(); ++q) {
        const auto& f = factors[q];
        Vector<T> next(out.size() * f.size());
        for (index_t a = 0; a < out.size(); ++a) next.segment(a * f.size(), f.size()) = out(a) * f;
        out = std::move(next);
    }
    if (length >= 0) {
        require_dims(length <= out.size(), "requested length exceeds the Kronecker product");
        out.conservativeResize(length);
    }
    return out;
}

// ---------------------------------------------------------------- KhatriRao

template <Scalar T>
index_t KhatriRaoTM<T>::order_for(index_t d, index_t d0) {
    require_dims(d0 >= 2 || d == 1, "base dimension must be at least 2");
    index_t ell = 1, full = d0;
    while (full < d) {
        full *= d0;
        ++ell;
    }
    return ell;
}

namespace {
index_t int_pow(index_t b, index_t e) {
    index_t r = 1;
    for (index_t i = 0; i < e; ++i) {
        if (r > (index_t(1) << 40) / std::max<index_t>(b, 1)) throw DimensionError("d0^ell is too large");
        r *= b;
    }
    return r;
}
}  // namespace

template <Scalar T>
KhatriRaoTM<T>::KhatriRaoTM(index_t d0, index_t ell, index_t k, EntryDist dist, std::uint64_t seed, index_t d)
    : TestMatrix<T>(d < 0 ? int_pow(d0, ell) : d, k, seed), d0_(d0), ell_(ell), dist_(dist) {
    require_dims(d0 >= 1 && ell >= 1, "KhatriRao needs d0 >= 1 and ell >= 1");
    require_dims(this->d_ <= int_pow(d0, ell), "ambient dimension exceeds d0^ell");
    if (dist == EntryDist::UniformSymmetric) throw PreconditionError("unsupported Khatri-Rao base distribution");
    factors_.assign(std::size_t(ell), Matrix<T>(d0, k));
    const RngStream root(seed);
    for (index_t j = 0; j < k; ++j) {
        RngStream rng = root.child(std::uint64_t(j));
        for (index_t q = 0; q < ell; ++q) factors_[std::size_t(q)].col(j) = draw_vector<T>(dist, d0, rng);
    }
}

template <Scalar T>
std::string KhatriRaoTM<T>::describe() const {
    std::ostringstream s;
    s << "khatrirao(d0=" << d0_ << ",ell=" << ell_ << ",dist=" << to_string(dist_) << ")";
    return s.str();
}

template <Scalar T>
Vector<T> KhatriRaoTM<T>::column(index_t j) const {
    std::vector<Vector<T>> f;
    for (index_t q = 0; q < ell_; ++q) f.push_back(factors_[std::size_t(q)].col(j));
    return kron_expand(f, this->d_) / std::sqrt(double(this->k_));
}

template <Scalar T>
Matrix<T> KhatriRaoTM<T>::columns(index_t first, index_t count) const {
    Matrix<T> W(this->d_, count);
    for (index_t j = 0; j < count; ++j) W.col(j) = column(first + j);
    return W;
}

template <Scalar T>
Matrix<T> KhatriRaoTM<T>::materialize() const {
    return columns(0, this->k_);
}

template <Scalar T>
Matrix<T> KhatriRaoTM<T>::apply_right(const Matrix<T>& A) const {
    this->check_right(A.cols());
    Matrix<T> Y(A.rows(), this->k_);
    constexpr index_t block = 256;
    for (index_t j = 0; j < this->k_; j += block) {
        const index_t m = std::min(block, this->k_ - j);
        Y.middleCols(j, m).noalias() = A * columns(j, m);
    }
    return Y;
}

template <Scalar T>
Matrix<T> KhatriRaoTM<T>::apply_right(const SparseMatrixCSR<T>& A) const {
    this->check_right(A.cols());
    Matrix<T> Y(A.rows(), this->k_);
    constexpr index_t block = 256;
    for (index_t j = 0; j < this->k_; j += block) {
        const index_t m = std::min(block, this->k_ - j);
        Y.middleCols(j, m) = A.multiply(columns(j, m));
    }
    return Y;
}

template <Scalar T>
Matrix<T> KhatriRaoTM<T>::apply_adjoint(const Matrix<T>& B) const {
    this->check_adjoint(B.rows());
    Matrix<T> out(this->k_, B.cols());
    const double s = 1.0 / std::sqrt(double(this->k_));
    std::vector<Vector<T>> f(static_cast<std::size_t>(ell_));
    for (index_t j = 0; j < this->k_; ++j) {
        for (index_t q = 0; q < ell_; ++q) f[std::size_t(q)] = factors_[std::size_t(q)].col(j);
        for (index_t c = 0; c < B.cols(); ++c) out(j, c) = s * kron_inner<T>(f, B.col(c));
    }
    return out;
}

// ---------------------------------------------------------------- factory

std::string SketchSpec::describe() const {
    std::ostringstream s;
    s << to_string(family);
    switch (family) {
        case Family::SparseStack:
        case Family::SparseUniform:
        case Family::SparseIID:
            s << "(zeta=" << zeta << ")";
            break;
        case Family::SparseCol:
            s << "(xi=" << xi << ")";
            break;
        case Family::SparseRTT:
            s << "(xi=" << xi << ",transform=" << (transform < 0 ? "default" : to_string(Transform(transform))) << ")";
            break;
        case Family::KhatriRao:
            s << "(d0=" << d0 << ",dist=" << (dist < 0 ? "default" : to_string(EntryDist(dist))) << ")";
            break;
        default:
            break;
    }
    return s.str();
}

namespace {
index_t integral_zeta(double zeta) {
    const auto z = index_t(std::llround(zeta));
    if (z < 1 || double(z) != zeta) throw PreconditionError("zeta must be a positive integer for this family");
    return z;
}
}  // namespace

template <Scalar T>
std::unique_ptr<TestMatrix<T>> make_test_matrix(const SketchSpec& spec, index_t d, index_t k, std::uint64_t seed) {
    switch (spec.family) {
        case Family::Gaussian:
            return std::make_unique<GaussianTM<T>>(d, k, seed);
        case Family::SparseStack: {
            const EntryDist dist = spec.dist < 0 ? SparseStackTM<T>::default_dist() : EntryDist(spec.dist);
            return SparseStackTM<T>::balanced(d, k, integral_zeta(spec.zeta), seed, dist);
        }
        case Family::SparseUniform: {
            const EntryDist dist = spec.dist < 0 ? EntryDist::RealRademacher : EntryDist(spec.dist);
            return std::make_unique<SparseUniformTM<T>>(d, k, integral_zeta(spec.zeta), seed, dist);
        }
        case Family::SparseIID: {
            const EntryDist dist = spec.dist < 0 ? EntryDist::RealRademacher : EntryDist(spec.dist);
            return std::make_unique<SparseIidTM<T>>(d, k, spec.zeta, seed, dist);
        }
        case Family::SparseCol:
            return std::make_unique<SparseColTM<T>>(d, k, spec.xi > 0 ? spec.xi : SparseRttTM<T>::default_xi(k), seed);
        case Family::SparseRTT: {
            const Transform t = spec.transform < 0 ? SparseRttTM<T>::default_transform(d) : Transform(spec.transform);
            const EntryDist diag = spec.dist < 0 ? SparseRttTM<T>::default_diag() : EntryDist(spec.dist);
            const index_t xi = std::min(d, spec.xi > 0 ? spec.xi : SparseRttTM<T>::default_xi(k));
            return std::make_unique<SparseRttTM<T>>(d, k, xi, t, diag, seed);
        }
        case Family::KhatriRao: {
            const EntryDist dist =
                spec.dist < 0 ? (is_complex_v<T> ? EntryDist::ComplexSpherical : EntryDist::RealSpherical)
                              : EntryDist(spec.dist);
            const index_t ell = spec.ell > 0 ? spec.ell : KhatriRaoTM<T>::order_for(d, spec.d0);
            return std::make_unique<KhatriRaoTM<T>>(spec.d0, ell, k, dist, seed, d);
        }
        default:
            throw PreconditionError("explicit test matrices are built directly");
    }
}

template <Scalar T>
TestMatrixFactory<T> factory_for(const SketchSpec& spec) {
    return [spec](index_t d, index_t k, std::uint64_t seed) { return make_test_matrix<T>(spec, d, k, seed); };
}

#define SKETCHKIT_INSTANTIATE(T)                                                                        \
    template class TestMatrix<T>;                                                                       \
    template class GaussianTM<T>;                                                                       \
    template class ExplicitTM<T>;                                                                       \
    template class SparseTM<T>;                                                                         \
    template class SparseStackTM<T>;                                                                    \
    template class SparseUniformTM<T>;                                                                  \
    template class SparseIidTM<T>;                                                                      \
    template class SparseColTM<T>;                                                                      \
    template class SparseRttTM<T>;                                                                      \
    template class KhatriRaoTM<T>;                                                                      \
    template T kron_inner(const std::vector<Vector<T>>&, const Vector<T>&);                             \
    template T kron_contract(const std::vector<Vector<T>>&, const Vector<T>&);                          \
    template Vector<T> kron_expand(const std::vector<Vector<T>>&, index_t);                             \
    template std::unique_ptr<TestMatrix<T>> make_test_matrix<T>(const SketchSpec&, index_t, index_t,    \
                                                                std::uint64_t);                         \
    template TestMatrixFactory<T> factory_for<T>(const SketchSpec&);

SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)

}  // namespace sketchkit
