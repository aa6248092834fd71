#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace omega::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., counter-based).
inline Counter philox4x32(Counter c, Key k) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

/// Independent sub-streams of one path.
enum class Domain : std::uint32_t { Diffusion = 0, Jumps = 1, Bridge = 2 };

/**
 * Sequential draws from the block sequence (seed, path, domain, 0..).
 * Any (seed, path, domain) triple gives the same numbers regardless of
 * thread or evaluation order.
 */
class Stream {
public:
    /// mirrored = true returns 1 - u from uniform(), the antithetic partner of the plain stream.
    Stream(std::uint64_t seed, std::uint64_t path, Domain domain, bool mirrored = false)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
               static_cast<std::uint32_t>(domain), 0u},
          mirrored_(mirrored) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block_ = philox4x32(ctr_, key_);
            ++ctr_[3];
            pos_ = 0;
        }
        return block_[pos_++];
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() {
        const std::uint64_t hi = next_u32() >> 5;
        const std::uint64_t lo = next_u32() >> 6;
        const double u = (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
        return mirrored_ ? 1.0 - u : u;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    /// Box-Muller; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = rad * std::sin(ang);
        has_spare_ = true;
        return rad * std::cos(ang);
    }

private:
    Key key_;
    Counter ctr_;
    Counter block_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
    bool mirrored_ = false;
};

}  // namespace omega::rng
