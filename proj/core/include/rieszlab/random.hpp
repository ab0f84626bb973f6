#pragma once

#include <array>
#include <cstdint>

namespace rieszlab {

// The Philox4x32-10 block function (counter-based, Salmon et al. 2011 family).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

// Stream of random numbers keyed by (seed, stream). The counter is {block_lo, block_hi, stream_lo,
// stream_hi} and the key is the seed, so every (seed, stream) pair is an independent sequence and
// results do not depend on the order in which streams are consumed.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // Uniform on (0, 1), 53 random bits; never returns 0 or 1.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Standard normal by Box-Muller (the second variate is cached).
    double normal();
    // Laplace with scale b: density e^{-|x|/b} / (2b).
    double laplace(double b);
    // Poisson(mean): inversion for mean < 30, transformed rejection (PTRS) above.
    std::uint64_t poisson(double mean);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_ = 0;
    std::uint64_t stream_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace rieszlab
