#pragma once

// Reproducible random streams. The generator is std::mt19937_64, whose
// output sequence is fixed by the standard; conversion to doubles is done
// here rather than through <random> distributions, whose algorithms are
// implementation-defined.

#include <cstdint>
#include <random>

namespace newton2d {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an independent sub-stream (batch, trial, ...) of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Standard exponential variate, -log(1 - U).
double exponential(Rng& rng);

}  // namespace newton2d
