#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace bullwhip {

/**
 * PCG32 (XSH RR variant): 64-bit LCG state, 32-bit permuted output.
 *
 * Constants and seeding follow the reference pcg32_srandom_r, so a given
 * (seed, stream) pair produces the same sequence in any implementation.
 * Satisfies UniformRandomBitGenerator.
 */
class Pcg32 {
public:
    using result_type = std::uint32_t;

    static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t kDefaultStream = 54u;

    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream) noexcept {
        inc_ = (stream << 1u) | 1u;
        state_ = 0;
        (*this)();
        state_ += seed;
        (*this)();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t old = state_;
        state_ = old * kMultiplier + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    /// Uniform on the open interval (0, 1): (u + 0.5) / 2^32 for one 32-bit draw.
    double uniform() noexcept { return (static_cast<double>((*this)()) + 0.5) * 0x1p-32; }

    friend bool operator==(const Pcg32&, const Pcg32&) = default;

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
};

/**
 * Standard normal variates by the Box–Muller transform.
 *
 * Draws u1 then u2 from the generator and yields
 * z0 = sqrt(-2 ln u1) cos(2π u2) first and z1 = sqrt(-2 ln u1) sin(2π u2) on the
 * following call. No other state is kept.
 */
class BoxMuller {
public:
    double operator()(Pcg32& rng) noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bullwhip
