#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace cyclewalk {

// Counter-based pseudo-random generator (Weyl sequence + 64-bit finalizer).
// Every draw is a pure function of (key, counter), so streams can be split
// deterministically and replayed bit-for-bit regardless of thread scheduling.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t key) : state_(key) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Finalizer from the splitmix64 reference implementation.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Stream-splitting rule: replica r draws from a SplitMix64 keyed with
//   master_seed XOR mix((r + 1) * golden_ratio_increment).
// The +1 keeps replica 0 from collapsing onto the raw master seed
// (mix(0) == 0), and distinct replicas land on unrelated streams.
inline SplitMix64 replica_stream(std::uint64_t master_seed, std::uint64_t replica_id) {
    const std::uint64_t fold = SplitMix64::mix((replica_id + 1) * 0x9E3779B97F4A7C15ULL);
    return SplitMix64(master_seed ^ fold);
}

// Unbiased uniform draw from {0, 1, ..., bound-1} (Lemire's method with
// rejection).  Avoids std::uniform_int_distribution so that output bytes do
// not depend on the standard-library implementation.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = rng();
    u128 m = static_cast<u128>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        while (lo < threshold) {
            x = rng();
            m = static_cast<u128>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(SplitMix64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Poisson(lambda) by counting unit-rate exponential arrivals.  O(lambda) but
// exact, and only used once per checkpoint when step counts are Poissonized.
inline std::uint64_t poisson(SplitMix64& rng, double lambda) {
    if (lambda <= 0.0) return 0;
    std::uint64_t count = 0;
    double acc = 0.0;
    for (;;) {
        double u = uniform01(rng);
        if (u <= 0.0) u = 0x1.0p-53;  // guard the log
        acc += -std::log(u);
        if (acc > lambda) return count;
        ++count;
    }
}

}  // namespace cyclewalk
