#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace letterfeat {

/// Seeded random source with a platform-independent draw sequence.
///
/// Wraps std::mt19937_64, whose raw output is fixed by the standard, and does
/// its own conversion to doubles and bounded integers instead of going through
/// the std distributions (whose algorithms differ between library vendors).
/// Every draw consumes exactly one 64-bit engine output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) built from the top 53 bits of one engine output.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Integer in [0, n) by multiply-shift on one engine output; n must be > 0.
    std::size_t below(std::size_t n);

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 mix of (seed, stream); gives independent seeds for parallel work
/// items so results do not depend on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace letterfeat
