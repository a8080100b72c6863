// Deterministic random number generation.
//
// All stochastic behaviour in the project flows through this generator so
// that runs are reproducible bit-for-bit from a single 64-bit seed,
// independent of platform, standard library, and thread count. std::
// distributions are avoided on purpose: their output is not pinned by the
// standard.

#pragma once

#include <cmath>
#include <cstdint>

namespace concordia {

// SplitMix64 finalizer; used for seed expansion and substream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives an independent substream seed from a master seed and two labels.
// The GA gives every (filling, generation) pair its own stream so that the
// evolution path never depends on how fitness evaluation is scheduled.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t h = mix64(seed ^ 0x7c3a9b4de6f51702ull);
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    return h;
}

// xoshiro256++ (Blackman & Vigna), seeded through SplitMix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ull;
            word = mix64(x);
        }
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform draw from the open interval (0,1): 53 random bits centered in
    // their bucket, so 0.0 and 1.0 are unreachable.
    double uniform01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform draw from the open interval (lo, hi). Rounding at the top of
    // the range can land on an endpoint; nudge back inside if it does.
    double uniform(double lo, double hi) noexcept {
        double x = lo + (hi - lo) * uniform01();
        if (x <= lo) x = std::nextafter(lo, hi);
        if (x >= hi) x = std::nextafter(hi, lo);
        return x;
    }

    // Uniform integer in [0, n), n >= 1. Multiply-shift keeps bias below
    // 2^-64, which is far under anything observable here.
    std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace concordia
