// SPDX-License-Identifier: Apache-2.0
#include "dnastore/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dnastore/mathkit.hpp"

namespace dnastore {

namespace {

double ln_alpha(int alphabet_size) {
  if (alphabet_size < 2) throw std::invalid_argument("bounds: alphabet size must be >= 2");
  return std::log(static_cast<double>(alphabet_size));
}

// (e^a - 1) / (2 e^a + 1) without overflow for large |a|.
double phi_from_log(double a) {
  if (a >= 0.0) {
    const double t = std::exp(-a);
    return (1.0 - t) / (2.0 + t);
  }
  return std::expm1(a) / (2.0 * std::exp(a) + 1.0);
}

}  // namespace

RcBoundConstants rc_bound_constants(const SystemParams& params, double delta) {
  validate(params);
  if (!(delta >= 0.0)) throw std::invalid_argument("rc_bound_constants: delta must be >= 0");
  RcBoundConstants c;
  c.c1 = params.beta * ln_alpha(params.alphabet_size);
  c.c0 = 1.0 - c.c1;
  c.c2 = 2.0 + 2.0 * params.xi - 0.5 * std::log(params.xi);
  c.delta = delta;
  return c;
}

double phi(std::int64_t M, double beta, double rho, int alphabet_size) {
  if (M < 2) throw std::invalid_argument("phi: M must be >= 2");
  const double ln_m = std::log(static_cast<double>(M));
  const double a = (1.0 - (1.0 + rho) * beta * ln_alpha(alphabet_size)) * ln_m;
  return phi_from_log(a);
}

BoundBreakdown pc_error_bound(const SystemParams& params, const DerivedSizes& sizes) {
  validate(params);
  BoundBreakdown result;
  result.params = params;
  result.sizes = sizes;

  const double c = params.beta * ln_alpha(params.alphabet_size);
  const double ln_m = std::log(static_cast<double>(params.M));
  const double zero_exp = (1.0 - (1.0 + params.rho) * c) * ln_m;   // ln M^(1-(1+rho)c)
  const double order_exp = (1.0 - (1.0 + 2.0 * params.rho) * c) * ln_m;

  result.phi = phi_from_log(zero_exp);
  result.term1_log = c * ln_m - params.xi * std::floor(std::exp(zero_exp));
  result.term2_log =
      (2.0 - params.rho) * c * ln_m - params.xi * result.phi * std::exp(order_exp);
  result.total = std::min(1.0, std::exp(result.term1_log) + std::exp(result.term2_log));
  return result;
}

double pc_error_bound_simplified(const SystemParams& params, const DerivedSizes& sizes) {
  validate(params);
  (void)sizes;
  const double c = params.beta * ln_alpha(params.alphabet_size);
  const double ln_m = std::log(static_cast<double>(params.M));
  const double gap = std::exp((1.0 - (1.0 + params.rho) * c) * ln_m);
  if (!(gap >= 4.0))
    throw std::domain_error("pc_error_bound_simplified: requires M^(1-(1+rho) beta ln|A|) >= 4");
  const double log_bound = std::log(2.0) + (2.0 - params.rho) * c * ln_m -
                           (params.xi / 3.0) *
                               std::exp((1.0 - (1.0 + 2.0 * params.rho) * c) * ln_m);
  return std::min(1.0, std::exp(log_bound));
}

double rc_error_bound(const SystemParams& params, const DerivedSizes& sizes, double delta) {
  (void)sizes;
  const RcBoundConstants c = rc_bound_constants(params, delta);
  const double xi_m = params.xi * static_cast<double>(params.M);
  if (!(xi_m > std::numbers::e))
    throw std::domain_error("rc_error_bound: requires xi M > e");

  const double ln_m = std::log(static_cast<double>(params.M));
  const double lnln = std::log(std::log(xi_m));
  const double m_c1 = std::exp(c.c1 * ln_m);
  const double bracket = c.c2 + lnln - delta * c.c0 * ln_m;
  // First term in log space; 1 + xi M^c0 handled via log1p of the exponent.
  const double log_first = std::log(2.0) +
                           0.5 * std::log1p(params.xi * std::exp(c.c0 * ln_m)) +
                           bracket * m_c1;
  return std::min(1.0, std::exp(log_first) + 1.0 / lnln);
}

double rc_density_target(double beta, int alphabet_size, double log_base) {
  if (!(log_base > 1.0)) throw std::invalid_argument("density: log base must exceed 1");
  return (1.0 - beta * ln_alpha(alphabet_size) / std::log(log_base)) / 2.0;
}

double pc_density_target(double beta, double rho, int alphabet_size, double log_base) {
  if (!(log_base > 1.0)) throw std::invalid_argument("density: log base must exceed 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("density: rho must lie in [0,1]");
  return rho * beta * ln_alpha(alphabet_size) / std::log(log_base);
}

double log_codebook_size(const DerivedSizes& sizes) {
  return log_gamma(static_cast<double>(sizes.n_eff) + 1.0) -
         static_cast<double>(sizes.num_subsets) *
             log_gamma(static_cast<double>(sizes.subset_size) + 1.0);
}

double pc_exact_density(const DerivedSizes& sizes, std::int64_t M) {
  if (M < 2) throw std::invalid_argument("pc_exact_density: M must be >= 2");
  return log_codebook_size(sizes) /
         (static_cast<double>(sizes.n) * std::log(static_cast<double>(M)));
}

double log_rc_pairwise_scaling(std::int64_t n, std::int64_t M, std::int64_t K) {
  if (n < 1 || K < 1 || M <= n)
    throw std::invalid_argument("log_rc_pairwise_scaling: need n >= 1, K >= 1, M > n");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(K);
  const double md = static_cast<double>(M);
  const double omega = std::exp(1.0) * std::sqrt(3.0 / (7.0 * std::numbers::pi));
  return nd * std::log(2.0 * omega * std::sqrt(std::numbers::pi)) +
         kd * std::log(md / (md - nd)) + log_gamma(nd) - log_gamma(nd + kd) +
         kd * std::log(kd) - kd + 0.5 * nd * std::log(kd / nd);
}

bool stirling_bounds_hold(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("stirling_bounds_hold: n must be >= 1");
  const double nd = static_cast<double>(n);
  const double log_fact = log_gamma(nd + 1.0);
  const double base = 0.5 * std::log(2.0 * std::numbers::pi * nd) + nd * (std::log(nd) - 1.0);
  return base <= log_fact && log_fact <= base + 0.5;
}

}  // namespace dnastore
