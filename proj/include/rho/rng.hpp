#pragma once

// Counter-based random number stream (Philox2x64-10) with Box-Muller
// Gaussians on top.  Counter-based means a stream's output is a pure
// function of (seed, stream_id, position): identical streams replay
// identically, distinct stream_ids are independent, and parallel workers
// need no shared state.

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace rho {

namespace detail {

struct U128Product {
    std::uint64_t hi;
    std::uint64_t lo;
};

inline U128Product mul_hi_lo(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return {static_cast<std::uint64_t>(p >> 64), static_cast<std::uint64_t>(p)};
}

} // namespace detail

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Next raw 64-bit word.
    std::uint64_t next_u64() {
        if (buf_pos_ == 2) {
            philox_block();
            buf_pos_ = 0;
        }
        return buf_[buf_pos_++];
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1] (safe under log()).
    double uniform_open_zero() {
        return 1.0 - uniform();
    }

    // Standard normal via Box-Muller; the paired variate is cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open_zero()));
        const double theta = 6.283185307179586476925286766559 * uniform();
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    // Uniform integer in [0, n), unbiased (rejection on the wrap-around tail).
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
        const std::uint64_t limit = (0u - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= limit) return x % n;
        }
    }

    // Beta(1/2, 1/2) by inverse CDF: F(x) = (2/pi) asin sqrt(x).
    double beta_half_half() {
        const double s = std::sin(1.5707963267948966192313216916398 * uniform());
        return s * s;
    }

private:
    void philox_block() {
        // Philox2x64-10: counter (c0, c1) = (block index, stream id), key = seed.
        constexpr std::uint64_t mult = 0xD2B74407B1CE6E93ull;
        constexpr std::uint64_t weyl = 0x9E3779B97F4A7C15ull;
        std::uint64_t c0 = block_++;
        std::uint64_t c1 = stream_id_;
        std::uint64_t key = seed_;
        for (int round = 0; round < 10; ++round) {
            const auto p = detail::mul_hi_lo(mult, c0);
            c0 = p.hi ^ key ^ c1;
            c1 = p.lo;
            key += weyl;
        }
        buf_[0] = c0;
        buf_[1] = c1;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int buf_pos_ = 2;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

} // namespace rho
