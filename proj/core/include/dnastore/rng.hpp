// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace dnastore {

/// Identifies one reproducible random stream. Streams with equal
/// (master_seed, stream_index) produce identical draws; distinct indices
/// give statistically independent streams, so trials can be scheduled on
/// any number of threads without changing results.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

namespace detail {
// splitmix64 finalizer (Steele, Lea, Flood 2014); used only for seed mixing.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

inline std::mt19937_64 make_engine(const RngStream& stream) {
  const std::uint64_t seed =
      detail::mix64(detail::mix64(stream.master_seed) ^
                    detail::mix64(~stream.stream_index));
  return std::mt19937_64{seed};
}

/// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0, 1).
inline double uniform_unit_open(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Exponential(1) draw, strictly positive.
inline double exponential_unit(std::mt19937_64& eng) {
  return -std::log(uniform_unit_open(eng));
}

/// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if ((bound & (bound - 1)) == 0) return eng() & (bound - 1);
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  for (;;) {
    const std::uint64_t x = eng();
    if (x < limit) return x % bound;
  }
}

}  // namespace dnastore
