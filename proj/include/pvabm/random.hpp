#pragma once

#include <cstdint>
#include <random>

namespace pvabm {

/// Seedable generator with a fixed, portable identity: std::mt19937_64 seeded
/// with the 64-bit seed, and uniform reals built from the top 53 bits of each
/// output, u = (x >> 11) * 2^-53 in [0, 1). The standard library's
/// distributions are implementation-defined and are deliberately not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// True with probability p.
    bool bernoulli(double p) { return uniform() < p; }

    bool operator==(const Rng&) const = default;

private:
    std::mt19937_64 engine_;
};

}  // namespace pvabm
