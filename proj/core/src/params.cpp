// SPDX-License-Identifier: Apache-2.0
#include "dnastore/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dnastore {

namespace {

// floor/ceil of quantities of the form exp(x) where the true value may be an
// exact integer that floating point lands epsilon below (or above). The
// relative nudge is far larger than the evaluation error of expl/logl and far
// smaller than the gap to any neighboring representable parameter choice.
constexpr long double kRelNudge = 1e-13L;

std::int64_t floor_nudged(long double v) {
  return static_cast<std::int64_t>(std::floor(v * (1 + kRelNudge) + 1e-12L));
}

std::int64_t ceil_nudged(long double v) {
  return static_cast<std::int64_t>(std::ceil(v * (1 - kRelNudge) - 1e-12L));
}

}  // namespace

void validate(const SystemParams& params) {
  if (params.M < 1) throw std::invalid_argument("params: M must be >= 1");
  if (params.alphabet_size < 2)
    throw std::invalid_argument("params: alphabet size must be >= 2");
  if (!(params.beta > 0.0)) throw std::invalid_argument("params: beta must be positive");
  if (!(params.xi > 0.0)) throw std::invalid_argument("params: xi must be positive");
  if (!(params.rho >= 0.0 && params.rho <= 1.0))
    throw std::invalid_argument("params: rho must lie in [0,1]");
}

bool in_short_molecule_regime(const SystemParams& params) {
  return params.beta * std::log(static_cast<double>(params.alphabet_size)) < 1.0;
}

std::int64_t floor_pow(std::int64_t base, double exponent) {
  if (base < 1) throw std::invalid_argument("floor_pow: base must be >= 1");
  if (!(exponent >= 0.0 && exponent <= 1.0))
    throw std::invalid_argument("floor_pow: exponent must lie in [0,1]");
  if (exponent == 0.0) return 1;
  if (exponent == 1.0) return base;
  const long double v =
      std::exp(static_cast<long double>(exponent) * std::log(static_cast<long double>(base)));
  return floor_nudged(v);
}

DerivedSizes derive(const SystemParams& params) {
  validate(params);
  const long double ln_alpha = std::log(static_cast<long double>(params.alphabet_size));
  const long double ln_m = std::log(static_cast<long double>(params.M));

  DerivedSizes sizes;
  // n = floor(M^(beta ln|A|)), clamped to >= 2 so downstream code stays total.
  sizes.n = std::max<std::int64_t>(
      2, floor_nudged(std::exp(static_cast<long double>(params.beta) * ln_alpha * ln_m)));
  // L = ceil(beta ln M) guarantees |A|^L >= n.
  sizes.L = std::max<std::int64_t>(1, ceil_nudged(static_cast<long double>(params.beta) * ln_m));
  // K = round(xi M); the rounding rule for non-integer xi*M is ours to pick.
  sizes.K = std::max<std::int64_t>(
      1, std::llround(params.xi * static_cast<double>(params.M)));
  sizes.num_subsets = floor_pow(sizes.n, params.rho);
  sizes.subset_size = floor_pow(sizes.n, 1.0 - params.rho);
  sizes.n_eff = sizes.num_subsets * sizes.subset_size;
  return sizes;
}

}  // namespace dnastore
