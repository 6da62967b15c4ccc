// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "dnastore/params.hpp"

namespace dnastore {

/// The two-term partition-code error bound, kept in log space; total is
/// the clamped sum min(1, e^term1 + e^term2).
struct BoundBreakdown {
  double term1_log = 0.0;  // ln of the zero-count (B1) term
  double term2_log = 0.0;  // ln of the mis-ordering (B2) term
  double total = 1.0;
  double phi = 0.0;
  SystemParams params;
  DerivedSizes sizes;
};

/// Constants of the random-coding error bound.
struct RcBoundConstants {
  double c0 = 0.0;  // 1 - beta ln|A|
  double c1 = 0.0;  // beta ln|A|
  double c2 = 0.0;  // 2 + 2 xi - (1/2) ln xi
  double delta = 0.0;
};

RcBoundConstants rc_bound_constants(const SystemParams& params, double delta);

/// Phi(M, beta, rho) = (T - 1) / (2T + 1) with T = M^(1 - (1+rho) beta ln|A|),
/// evaluated stably for exponents of either sign. Tends to 1/2 as M grows.
double phi(std::int64_t M, double beta, double rho, int alphabet_size);

/// Partition-code bound:
///   term1 = M^(beta ln|A|) exp{-xi floor(M^(1-(1+rho) beta ln|A|))}
///   term2 = M^((2-rho) beta ln|A|) exp{-xi Phi M^(1-(1+2rho) beta ln|A|)}
BoundBreakdown pc_error_bound(const SystemParams& params, const DerivedSizes& sizes);

/// Simplified large-M bound 2 M^((2-rho) beta ln|A|) exp{-(xi/3) M^(1-(1+2rho) beta ln|A|)},
/// clamped to 1. Throws std::domain_error unless M^(1-(1+rho) beta ln|A|) >= 4.
double pc_error_bound_simplified(const SystemParams& params, const DerivedSizes& sizes);

/// Random-coding bound
///   2 sqrt(1 + xi M^c0) exp{[c2 + ln ln(xi M) - delta c0 ln M] M^c1} + 1/ln ln(xi M),
/// clamped to 1. Throws std::domain_error unless xi M > e.
double rc_error_bound(const SystemParams& params, const DerivedSizes& sizes, double delta);

/// Leading information-density factors of the two schemes. beta is
/// interpreted in the caller's log base: L = beta log_base(M).
double rc_density_target(double beta, int alphabet_size, double log_base);
double pc_density_target(double beta, double rho, int alphabet_size, double log_base);

/// ln|C_M| / (n ln M) via log-factorials; base-independent ratio.
double pc_exact_density(const DerivedSizes& sizes, std::int64_t M);

/// ln of the codebook cardinality n_eff!/(subset_size!)^num_subsets via
/// log-factorials (no big integers materialized).
double log_codebook_size(const DerivedSizes& sizes);

/// Diagnostic: ln B(n, M, K), the scaling constant of the pairwise
/// random-coding bound. A proof device, not part of the bound API proper.
double log_rc_pairwise_scaling(std::int64_t n, std::int64_t M, std::int64_t K);

/// Stirling sandwich sqrt(2 pi n)(n/e)^n <= n! <= sqrt(2 pi e n)(n/e)^n,
/// checked through log-factorials.
bool stirling_bounds_hold(std::int64_t n);

}  // namespace dnastore
