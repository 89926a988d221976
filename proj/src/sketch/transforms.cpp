#include "sketchkit/sketch/transforms.hpp"

#include "sketchkit/core/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace sketchkit {

const char* to_string(Transform t) {
    switch (t) {
        case Transform::WHT:
            return "wht";
        case Transform::DCT:
            return "dct";
        default:
            return "dft";
    }
}

Transform parse_transform(const std::string& s) {
    if (s == "wht") return Transform::WHT;
    if (s == "dct") return Transform::DCT;
    if (s == "dft") return Transform::DFT;
    throw ConfigError("unknown transform '" + s + "'");
}

bool is_power_of_two(index_t n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

template <Scalar T>
void wht_inplace(T* x, index_t n) {
    if (!is_power_of_two(n)) throw DimensionError("WHT length must be a power of two");
    for (index_t h = 1; h < n; h *= 2)
        for (index_t i = 0; i < n; i += 2 * h)
            for (index_t j = i; j < i + h; ++j) {
                const T a = x[j], b = x[j + h];
                x[j] = a + b;
                x[j + h] = a - b;
            }
    const double s = 1.0 / std::sqrt(double(n));
    for (index_t i = 0; i < n; ++i) x[i] *= s;
}

// FFTW plans are created once per (kind, length) under a lock; execution on
// separate buffers is thread safe.
enum class PlanKind { Redft10, Redft01, Forward, Backward };

struct AlignedBuffer {
    double* p = nullptr;
    std::size_t n = 0;
    ~AlignedBuffer() { fftw_free(p); }
    double* get(std::size_t len) {
        if (len > n) {
            fftw_free(p);
            p = static_cast<double*>(fftw_malloc(sizeof(double) * len));
            n = len;
        }
        return p;
    }
};

std::mutex plan_mutex;

fftw_plan get_plan(PlanKind kind, index_t n) {
    static std::map<std::pair<int, index_t>, fftw_plan> cache;
    std::lock_guard lock(plan_mutex);
    const auto key = std::make_pair(int(kind), n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    fftw_plan plan;
    const bool complex = kind == PlanKind::Forward || kind == PlanKind::Backward;
    double* in = static_cast<double*>(fftw_malloc(sizeof(double) * std::size_t(n) * (complex ? 2 : 1)));
    double* out = static_cast<double*>(fftw_malloc(sizeof(double) * std::size_t(n) * (complex ? 2 : 1)));
    if (complex) {
        plan = fftw_plan_dft_1d(int(n), reinterpret_cast<fftw_complex*>(in), reinterpret_cast<fftw_complex*>(out),
                                kind == PlanKind::Forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        plan = fftw_plan_r2r_1d(int(n), in, out, kind == PlanKind::Redft10 ? FFTW_REDFT10 : FFTW_REDFT01,
                                FFTW_ESTIMATE);
    }
    fftw_free(in);
    fftw_free(out);
    if (!plan) throw Error("FFTW plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

void dct_inplace(double* x, index_t n, bool inverse) {
    if (n == 0) return;
    thread_local AlignedBuffer bin, bout;
    double* in = bin.get(std::size_t(n));
    double* out = bout.get(std::size_t(n));
    const double s0 = std::sqrt(1.0 / double(n)), sk = std::sqrt(2.0 / double(n));
    if (!inverse) {
        for (index_t i = 0; i < n; ++i) in[i] = x[i];
        fftw_execute_r2r(get_plan(PlanKind::Redft10, n), in, out);
        x[0] = out[0] * s0 / 2;
        for (index_t i = 1; i < n; ++i) x[i] = out[i] * sk / 2;
    } else {
        in[0] = x[0] * s0;
        for (index_t i = 1; i < n; ++i) in[i] = x[i] * sk / 2;
        fftw_execute_r2r(get_plan(PlanKind::Redft01, n), in, out);
        for (index_t i = 0; i < n; ++i) x[i] = out[i];
    }
}

void dft_inplace(cplx* x, index_t n, bool inverse) {
    if (n == 0) return;
    thread_local AlignedBuffer bin, bout;
    auto* in = reinterpret_cast<fftw_complex*>(bin.get(2 * std::size_t(n)));
    auto* out = reinterpret_cast<fftw_complex*>(bout.get(2 * std::size_t(n)));
    for (index_t i = 0; i < n; ++i) {
        in[i][0] = x[i].real();
        in[i][1] = x[i].imag();
    }
    fftw_execute_dft(get_plan(inverse ? PlanKind::Backward : PlanKind::Forward, n), in, out);
    const double s = 1.0 / std::sqrt(double(n));
    for (index_t i = 0; i < n; ++i) x[i] = cplx(out[i][0], out[i][1]) * s;
}

template <Scalar T>
void apply_one(Transform t, TransformOp op, T* x, index_t n) {
    switch (t) {
        case Transform::WHT:
            wht_inplace(x, n);
            return;
        case Transform::DCT: {
            const bool inverse = op != TransformOp::Forward;
            if constexpr (is_complex_v<T>) {
                thread_local std::vector<double> re, im;
                re.resize(std::size_t(n));
                im.resize(std::size_t(n));
                for (index_t i = 0; i < n; ++i) {
                    re[i] = x[i].real();
                    im[i] = x[i].imag();
                }
                dct_inplace(re.data(), n, inverse);
                dct_inplace(im.data(), n, inverse);
                for (index_t i = 0; i < n; ++i) x[i] = cplx(re[i], im[i]);
            } else {
                dct_inplace(x, n, inverse);
            }
            return;
        }
        case Transform::DFT:
            if constexpr (is_complex_v<T>) {
                // The DFT matrix is symmetric, so F^T = F and F^* = conj(F).
                dft_inplace(x, n, op == TransformOp::Adjoint);
            } else {
                throw PreconditionError("the DFT is not available over the real field");
            }
            return;
    }
}

}  // namespace

template <Scalar T>
Vector<T> wht(const Vector<T>& x) {
    Vector<T> y = x;
    wht_inplace(y.data(), y.size());
    return y;
}

RealVector dct2_ortho(const RealVector& x) {
    RealVector y = x;
    dct_inplace(y.data(), y.size(), false);
    return y;
}

RealVector idct2_ortho(const RealVector& x) {
    RealVector y = x;
    dct_inplace(y.data(), y.size(), true);
    return y;
}

Vector<cplx> dft_unitary(const Vector<cplx>& x) {
    Vector<cplx> y = x;
    dft_inplace(y.data(), y.size(), false);
    return y;
}

Vector<cplx> idft_unitary(const Vector<cplx>& x) {
    Vector<cplx> y = x;
    dft_inplace(y.data(), y.size(), true);
    return y;
}

template <Scalar T>
void transform_columns(Transform t, TransformOp op, Matrix<T>& X) {
    if (t == Transform::WHT && !is_power_of_two(X.rows())) throw DimensionError("WHT length must be a power of two");
    for (index_t j = 0; j < X.cols(); ++j) apply_one(t, op, X.col(j).data(), X.rows());
}

template Vector<double> wht(const Vector<double>&);
template Vector<cplx> wht(const Vector<cplx>&);
template void transform_columns(Transform, TransformOp, Matrix<double>&);
template void transform_columns(Transform, TransformOp, Matrix<cplx>&);

}  // namespace sketchkit
