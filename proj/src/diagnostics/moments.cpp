#include "sketchkit/diagnostics/moments.hpp"

#include "sketchkit/core/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace sketchkit {

namespace {

template <Scalar T>
void check_square(const Matrix<T>& M, index_t d, const char* who) {
    require_dims(M.rows() == d && M.cols() == d, std::string(who) + ": M must be d x d");
    const double scale = std::max(M.norm(), 1e-300);
    if ((M - M.adjoint()).norm() > 1e-12 * scale) throw PreconditionError(std::string(who) + ": M is not self-adjoint");
}

long long ipow(long long base, index_t e) {
    long long out = 1;
    for (index_t i = 0; i < e; ++i) {
        out *= base;
        if (out > moment_enumeration_budget) return moment_enumeration_budget + 1;
    }
    return out;
}

long long binomial(index_t n, index_t k) {
    long long out = 1;
    for (index_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Sums that appear in every closed form.
template <Scalar T>
struct Pieces {
    double trace = 0, diag_sq = 0, frob_sq = 0, off_abs_sq = 0, off_sq = 0;
};

template <Scalar T>
Pieces<T> pieces(const Matrix<T>& M) {
    Pieces<T> p;
    const index_t d = M.rows();
    for (index_t i = 0; i < d; ++i) {
        const double mii = real_part(M(i, i));
        p.trace += mii;
        p.diag_sq += mii * mii;
        for (index_t j = 0; j < d; ++j) {
            p.frob_sq += abs2(M(i, j));
            if (i != j) {
                p.off_abs_sq += abs2(M(i, j));
                p.off_sq += real_part(T(M(i, j) * M(i, j)));
            }
        }
    }
    return p;
}

}  // namespace

template <Scalar T>
MomentEnumeration<T> countsketch_moment_oracle(index_t d, index_t b, const Matrix<T>& M) {
    if (d < 1 || b < 1) throw PreconditionError("countsketch_moment_oracle: d and b must be positive");
    check_square(M, d, "countsketch_moment_oracle");
    const long long placements = ipow(b, d), signs = ipow(2, d);
    if (ipow(2 * b, d) > moment_enumeration_budget)
        throw PreconditionError("countsketch_moment_oracle: enumeration budget exceeded");

    MomentEnumeration<T> out;
    out.first = Matrix<T>::Zero(d, d);
    std::vector<index_t> s(static_cast<std::size_t>(d));
    std::vector<double> rho(static_cast<std::size_t>(d));
    for (long long pc = 0; pc < placements; ++pc) {
        long long code = pc;
        for (index_t i = 0; i < d; ++i) {
            s[std::size_t(i)] = index_t(code % b);
            code /= b;
        }
        for (long long sc = 0; sc < signs; ++sc) {
            for (index_t i = 0; i < d; ++i) rho[std::size_t(i)] = (sc >> i) & 1 ? -1.0 : 1.0;
            T tr = 0;
            for (index_t i = 0; i < d; ++i)
                for (index_t j = 0; j < d; ++j) {
                    if (s[std::size_t(i)] != s[std::size_t(j)]) continue;
                    const double x = rho[std::size_t(i)] * rho[std::size_t(j)];
                    out.first(i, j) += x;
                    tr += M(j, i) * x;
                }
            const double t = real_part(tr);
            out.second += t * t;
        }
    }
    out.outcomes = placements * signs;
    out.first /= double(out.outcomes);
    out.second /= double(out.outcomes);
    return out;
}

template <Scalar T>
MomentEnumeration<T> sparsecol_moment_oracle(index_t d, index_t xi, const Matrix<T>& M) {
    if (d < 1 || xi < 1 || xi > d) throw PreconditionError("sparsecol_moment_oracle: need 1 <= xi <= d");
    check_square(M, d, "sparsecol_moment_oracle");
    if (d > 62 || binomial(d, xi) * ipow(2, xi) > moment_enumeration_budget)
        throw PreconditionError("sparsecol_moment_oracle: enumeration budget exceeded");

    MomentEnumeration<T> out;
    out.first = Matrix<T>::Zero(d, d);
    const double scale = std::sqrt(double(d) / double(xi));
    std::vector<index_t> support;
    std::vector<double> w(static_cast<std::size_t>(d));
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
        if (std::popcount(mask) != xi) continue;
        support.clear();
        for (index_t i = 0; i < d; ++i)
            if ((mask >> i) & 1) support.push_back(i);
        for (long long sc = 0; sc < (1LL << xi); ++sc) {
            std::fill(w.begin(), w.end(), 0.0);
            for (index_t q = 0; q < xi; ++q) w[std::size_t(support[std::size_t(q)])] = (sc >> q) & 1 ? -scale : scale;
            T tr = 0;
            for (index_t i : support)
                for (index_t j : support) {
                    const double x = w[std::size_t(i)] * w[std::size_t(j)];
                    out.first(i, j) += x;
                    tr += M(j, i) * x;
                }
            const double t = real_part(tr);
            out.second += t * t;
            ++out.outcomes;
        }
    }
    out.first /= double(out.outcomes);
    out.second /= double(out.outcomes);
    return out;
}

template <Scalar T>
double countsketch_moment_exact(index_t b, const Matrix<T>& M) {
    const auto p = pieces(M);
    return p.trace * p.trace + (p.off_abs_sq + p.off_sq) / double(b);
}

template <Scalar T>
double countsketch_moment_bound(index_t b, const Matrix<T>& M) {
    const auto p = pieces(M);
    return p.trace * p.trace + 2 * p.frob_sq / double(b);
}

template <Scalar T>
double sparsecol_moment_reference(index_t d, index_t xi, const Matrix<T>& M) {
    const auto p = pieces(M);
    const double f = double(xi - 1) / double(xi);
    return double(d) / double(xi) * p.diag_sq + 2 * f * p.trace * p.trace + 4 * f * p.frob_sq;
}

template <Scalar T>
double sparsecol_moment_bound(index_t d, index_t xi, const Matrix<T>& M) {
    const auto p = pieces(M);
    return double(d) / double(xi) * p.diag_sq + 2 * p.trace * p.trace + 4 * p.frob_sq;
}

template <Scalar T>
double sparsecol_moment_exact(index_t d, index_t xi, const Matrix<T>& M) {
    const auto p = pieces(M);
    const double diag = double(d) / double(xi) * p.diag_sq;
    if (xi == 1 || d == 1) return diag;
    const double c = double(d) * double(xi - 1) / (double(xi) * double(d - 1));
    const double cross = p.trace * p.trace - p.diag_sq;
    return diag + c * (cross + p.off_sq + p.off_abs_sq);
}

#define SKETCHKIT_INSTANTIATE(T)                                                                    \
    template MomentEnumeration<T> countsketch_moment_oracle<T>(index_t, index_t, const Matrix<T>&); \
    template MomentEnumeration<T> sparsecol_moment_oracle<T>(index_t, index_t, const Matrix<T>&);   \
    template double countsketch_moment_exact<T>(index_t, const Matrix<T>&);                         \
    template double countsketch_moment_bound<T>(index_t, const Matrix<T>&);                         \
    template double sparsecol_moment_reference<T>(index_t, index_t, const Matrix<T>&);                \
    template double sparsecol_moment_bound<T>(index_t, index_t, const Matrix<T>&);                  \
    template double sparsecol_moment_exact<T>(index_t, index_t, const Matrix<T>&);
SKETCHKIT_INSTANTIATE(double)
SKETCHKIT_INSTANTIATE(cplx)
#undef SKETCHKIT_INSTANTIATE

}  // namespace sketchkit
