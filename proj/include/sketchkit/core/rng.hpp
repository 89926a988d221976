#pragma once

#include "sketchkit/core/types.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>

namespace sketchkit {

// Counter-based stream: Philox4x32-10 keyed by a hash of (seed, path).
// Equal (seed, path) pairs give equal output regardless of who asks or when.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);
    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    // Derived stream with one more path label.
    RngStream child(std::uint64_t label) const;
    RngStream child(std::initializer_list<std::uint64_t> labels) const;

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();
    double uniform();        // [0, 1)
    double uniform_open();   // (0, 1]
    std::uint64_t below(std::uint64_t n);  // uniform on {0, ..., n-1}
    double normal();
    double rademacher();
    cplx steinhaus();
    cplx complex_normal();      // (Z1 + iZ2)/sqrt(2)
    cplx complex_rademacher();  // (r1 + i r2)/sqrt(2)

    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key);

  private:
    RngStream(std::uint64_t seed, std::uint64_t h1, std::uint64_t h2);
    void refill();

    std::uint64_t seed_;
    std::uint64_t h1_, h2_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int avail_ = 0;
    double spare_normal_ = 0;
    bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace sketchkit
