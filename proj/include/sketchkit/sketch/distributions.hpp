#pragma once

#include "sketchkit/core/rng.hpp"
#include "sketchkit/core/types.hpp"

#include <string>

namespace sketchkit {

enum class EntryDist {
    RealGaussian,
    RealRademacher,
    RealSpherical,
    ComplexGaussian,
    ComplexRademacher,
    Steinhaus,
    ComplexSpherical,
    UniformSymmetric,  // uniform on [-sqrt 3, sqrt 3]
};

const char* to_string(EntryDist d);
EntryDist parse_entry_dist(const std::string& s);
bool is_complex_dist(EntryDist d);

// One scalar draw with unit second moment. Spherical laws are vector laws
// and are rejected here.
template <Scalar T>
T draw_scalar(EntryDist dist, RngStream& rng);

// A vector of length n from the law; spherical laws give exact norm sqrt(n).
template <Scalar T>
Vector<T> draw_vector(EntryDist dist, index_t n, RngStream& rng);

}  // namespace sketchkit
