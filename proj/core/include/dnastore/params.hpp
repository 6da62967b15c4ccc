// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace dnastore {

/// Raw system parameters of the storage channel and both codes.
///
/// Conventions: all internal formulas use the natural logarithm. The
/// molecule length is L = beta * ln(M) symbols and the number of molecule
/// types is n = floor(M^(beta * ln|A|)). K = round(xi * M) reads are drawn.
struct SystemParams {
  std::int64_t M = 0;     // molecules per codeword
  int alphabet_size = 4;  // |A|
  double beta = 0.0;      // molecule length parameter
  double xi = 1.0;        // coverage depth K/M
  double rho = 0.0;       // partition-code design parameter in [0,1]
};

/// Integer quantities derived from SystemParams.
struct DerivedSizes {
  std::int64_t n = 0;            // molecule types, >= 2
  std::int64_t L = 0;            // molecule length in symbols, >= 1
  std::int64_t K = 0;            // reads, >= 1
  std::int64_t num_subsets = 0;  // floor(n^rho)
  std::int64_t subset_size = 0;  // floor(n^(1-rho))
  std::int64_t n_eff = 0;        // num_subsets * subset_size
};

/// Throws std::invalid_argument if any invariant fails
/// (M >= 1, |A| >= 2, beta > 0, xi > 0, rho in [0,1]).
void validate(const SystemParams& params);

/// True when beta * ln|A| < 1, i.e. molecules are too short to carry an
/// index. Callers may warn (not reject) outside this regime.
bool in_short_molecule_regime(const SystemParams& params);

/// floor(base^exponent) for integer base >= 1 and exponent in [0,1],
/// robust to floating-point representation of exact integer powers.
std::int64_t floor_pow(std::int64_t base, double exponent);

/// Derives all integer sizes. Deterministic and pure.
DerivedSizes derive(const SystemParams& params);

}  // namespace dnastore
