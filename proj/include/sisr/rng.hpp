#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace sisr {

// Counter-based randomness. Every (seed, lane, unit, stage) tuple names an
// independent stream, so a particle's draws at a given stage are identical
// no matter how work is scheduled across threads.
//
// lane  - subgroup index (or reserved lanes below)
// unit  - particle slot within the subgroup, or unit_resample
// stage - time index t
inline constexpr std::uint64_t unit_resample = ~0ull;
inline constexpr std::uint64_t lane_direct_mc = 1ull << 63;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace detail {

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const __uint128_t p = static_cast<__uint128_t>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace detail

// Philox 4x64, 10 rounds.
inline std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr,
                                               std::array<std::uint64_t, 2> key) {
    constexpr std::uint64_t m0 = 0xD2E7470EE14C6C93ull;
    constexpr std::uint64_t m1 = 0xCA5A826395121157ull;
    constexpr std::uint64_t w0 = 0x9E3779B97F4A7C15ull;
    constexpr std::uint64_t w1 = 0xBB67AE8584CAA73Bull;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += w0;
            key[1] += w1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        detail::mulhilo64(m0, ctr[0], hi0, lo0);
        detail::mulhilo64(m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t lane, std::uint64_t unit, std::uint64_t stage)
        : ctr_{0, stage, unit, lane},
          key_{splitmix64(seed), splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ull)},
          pos_(4) {}

    std::uint64_t next_u64() {
        if (pos_ == 4) {
            buf_ = philox4x64(ctr_, key_);
            ++ctr_[0];
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    // Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Box-Muller (trigonometric form): exactly two uniforms per pair.
    std::pair<double, double> normal_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    double normal() { return normal_pair().first; }

  private:
    std::array<std::uint64_t, 4> ctr_;
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> buf_{};
    int pos_;
};

}  // namespace sisr
