// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace dnastore {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact factorials 0! .. upto!.
inline std::vector<BigInt> factorial_table(std::int64_t upto) {
  std::vector<BigInt> table(static_cast<std::size_t>(upto) + 1);
  table[0] = 1;
  for (std::int64_t i = 1; i <= upto; ++i) table[i] = table[i - 1] * i;
  return table;
}

/// Natural log of a positive big integer, accurate to ~1 ulp of double.
inline double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_big: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 52;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// floor(num/den) for exact rationals, correct for negative values too.
inline BigInt floor_rational(const BigRational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);  // always > 0
  BigInt quot = num / den;
  if (num < 0 && quot * den != num) --quot;
  return quot;
}

/// Uniform BigInt in [0, bound) via bit-level rejection sampling.
inline BigInt uniform_below_big(std::mt19937_64& eng, const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below_big: bound must be positive");
  if (bound == 1) return BigInt{0};
  const unsigned nbits = boost::multiprecision::msb(bound - 1) + 1;
  const unsigned words = (nbits + 63) / 64;
  for (;;) {
    BigInt value = 0;
    for (unsigned w = 0; w < words; ++w) {
      value <<= 64;
      value |= BigInt{eng()};
    }
    value >>= (words * 64 - nbits);
    if (value < bound) return value;
  }
}

}  // namespace dnastore
