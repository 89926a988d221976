#include "sketchkit/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace sketchkit {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {
constexpr std::uint64_t kPathA = 0x243F6A8885A308D3ULL;
constexpr std::uint64_t kPathB = 0x13198A2E03707344ULL;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}
}  // namespace

std::array<std::uint32_t, 4> RngStream::philox(std::array<std::uint32_t, 4> c,
                                               std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t M0 = 0xD2511F53, M1 = 0xCD9E8D57;
    constexpr std::uint32_t W0 = 0x9E3779B9, W1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(M0, c[0], hi0, lo0);
        mulhilo(M1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += W0;
        k[1] += W1;
    }
    return c;
}

RngStream::RngStream(std::uint64_t seed) : RngStream(seed, mix64(seed ^ kPathA), mix64(seed ^ kPathB)) {}

RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) : RngStream(seed) {
    *this = child(path);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t h1, std::uint64_t h2) : seed_(seed), h1_(h1), h2_(h2) {}

RngStream RngStream::child(std::uint64_t label) const {
    return RngStream(seed_, mix64(h1_ ^ mix64(label + kPathA)), mix64(h2_ ^ mix64(label + kPathB) ^ h1_));
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> labels) const {
    RngStream s = *this;
    for (auto l : labels) s = s.child(l);
    s.block_ = 0;
    s.avail_ = 0;
    s.has_spare_ = false;
    return s;
}

void RngStream::refill() {
    const std::array<std::uint32_t, 4> ctr{std::uint32_t(block_), std::uint32_t(block_ >> 32), std::uint32_t(h2_),
                                           std::uint32_t(h2_ >> 32)};
    const auto out = philox(ctr, {std::uint32_t(h1_), std::uint32_t(h1_ >> 32)});
    ++block_;
    buf_[0] = (std::uint64_t(out[1]) << 32) | out[0];
    buf_[1] = (std::uint64_t(out[3]) << 32) | out[2];
    avail_ = 2;
}

std::uint64_t RngStream::next_u64() {
    if (avail_ == 0) refill();
    return buf_[2 - avail_--];
}

double RngStream::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_open() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

std::uint64_t RngStream::below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = next_u64();
    __uint128_t m = __uint128_t(x) * n;
    std::uint64_t l = std::uint64_t(m);
    if (l < n) {
        const std::uint64_t t = -n % n;
        while (l < t) {
            x = next_u64();
            m = __uint128_t(x) * n;
            l = std::uint64_t(m);
        }
    }
    return std::uint64_t(m >> 64);
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

double RngStream::rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

cplx RngStream::steinhaus() {
    const double th = 2.0 * std::numbers::pi * uniform();
    return {std::cos(th), std::sin(th)};
}

cplx RngStream::complex_normal() {
    const double a = normal();
    const double b = normal();
    return cplx(a, b) * std::numbers::sqrt2 * 0.5;
}

cplx RngStream::complex_rademacher() {
    const double a = rademacher();
    const double b = rademacher();
    return cplx(a, b) * std::numbers::sqrt2 * 0.5;
}

}  // namespace sketchkit
