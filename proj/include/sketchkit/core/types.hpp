#pragma once

#include <Eigen/Dense>

#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <type_traits>

namespace sketchkit {

using cplx = std::complex<double>;
using index_t = std::int64_t;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cplx>;

template <class T>
inline constexpr bool is_complex_v = std::is_same_v<T, cplx>;

enum class Field { Real, Complex };

template <Scalar T>
inline constexpr Field field_of = is_complex_v<T> ? Field::Complex : Field::Real;

inline const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

template <Scalar T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <Scalar T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Unit roundoff of double precision, 2^-53.
inline constexpr double eps_mach = std::numeric_limits<double>::epsilon() / 2;

template <Scalar T>
inline T conj(T x) {
    if constexpr (is_complex_v<T>)
        return std::conj(x);
    else
        return x;
}

template <Scalar T>
inline double abs2(T x) {
    if constexpr (is_complex_v<T>)
        return std::norm(x);
    else
        return x * x;
}

template <Scalar T>
inline double real_part(T x) {
    if constexpr (is_complex_v<T>)
        return x.real();
    else
        return x;
}

template <Scalar T>
bool all_finite(const Matrix<T>& M) {
    for (index_t j = 0; j < M.cols(); ++j)
        for (index_t i = 0; i < M.rows(); ++i) {
            const T v = M(i, j);
            if constexpr (is_complex_v<T>) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            } else {
                if (!std::isfinite(v)) return false;
            }
        }
    return true;
}

}  // namespace sketchkit
