#include "sketchkit/sketch/distributions.hpp"

#include "sketchkit/core/errors.hpp"

#include <cmath>

namespace sketchkit {

const char* to_string(EntryDist d) {
    switch (d) {
        case EntryDist::RealGaussian:
            return "real-gaussian";
        case EntryDist::RealRademacher:
            return "real-rademacher";
        case EntryDist::RealSpherical:
            return "real-spherical";
        case EntryDist::ComplexGaussian:
            return "complex-gaussian";
        case EntryDist::ComplexRademacher:
            return "complex-rademacher";
        case EntryDist::Steinhaus:
            return "steinhaus";
        case EntryDist::ComplexSpherical:
            return "complex-spherical";
        default:
            return "uniform-symmetric";
    }
}

EntryDist parse_entry_dist(const std::string& s) {
    for (int i = 0; i <= int(EntryDist::UniformSymmetric); ++i)
        if (s == to_string(EntryDist(i))) return EntryDist(i);
    throw ConfigError("unknown distribution '" + s + "'");
}

bool is_complex_dist(EntryDist d) {
    return d == EntryDist::ComplexGaussian || d == EntryDist::ComplexRademacher || d == EntryDist::Steinhaus ||
           d == EntryDist::ComplexSpherical;
}

template <Scalar T>
T draw_scalar(EntryDist dist, RngStream& rng) {
    if constexpr (!is_complex_v<T>) {
        if (is_complex_dist(dist))
            throw PreconditionError(std::string("distribution ") + to_string(dist) + " needs the complex field");
    }
    switch (dist) {
        case EntryDist::RealGaussian:
            return T(rng.normal());
        case EntryDist::RealRademacher:
            return T(rng.rademacher());
        case EntryDist::UniformSymmetric:
            return T(std::sqrt(3.0) * (2 * rng.uniform() - 1));
        default:
            break;
    }
    if constexpr (is_complex_v<T>) {
        switch (dist) {
            case EntryDist::ComplexGaussian:
                return rng.complex_normal();
            case EntryDist::ComplexRademacher:
                return rng.complex_rademacher();
            case EntryDist::Steinhaus:
                return rng.steinhaus();
            default:
                break;
        }
    }
    throw PreconditionError(std::string("distribution ") + to_string(dist) + " is not a scalar law");
}

template <Scalar T>
Vector<T> draw_vector(EntryDist dist, index_t n, RngStream& rng) {
    Vector<T> v(n);
    if (dist == EntryDist::RealSpherical || dist == EntryDist::ComplexSpherical) {
        const EntryDist base = dist == EntryDist::RealSpherical ? EntryDist::RealGaussian : EntryDist::ComplexGaussian;
        do {
            for (index_t i = 0; i < n; ++i) v(i) = draw_scalar<T>(base, rng);
        } while (v.norm() == 0);
        v *= std::sqrt(double(n)) / v.norm();
        return v;
    }
    for (index_t i = 0; i < n; ++i) v(i) = draw_scalar<T>(dist, rng);
    return v;
}

template double draw_scalar<double>(EntryDist, RngStream&);
template cplx draw_scalar<cplx>(EntryDist, RngStream&);
template Vector<double> draw_vector<double>(EntryDist, index_t, RngStream&);
template Vector<cplx> draw_vector<cplx>(EntryDist, index_t, RngStream&);

}  // namespace sketchkit
