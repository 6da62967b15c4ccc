// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace dnastore {

/// Numeric tolerances used across the library, collected in one record.
struct NumericTolerances {
  double special_function_rel = 1e-12;  // log_gamma and friends
  double pmf_sum_abs = 1e-12;           // PMF normalization check
  double mc_sigmas = 3.0;               // Monte Carlo cross-check width
};
inline constexpr NumericTolerances kTolerances{};

/// A point of the probability simplex: entries in [0,1] summing to 1
/// within kTolerances.pmf_sum_abs. Zero entries are allowed.
class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// KL divergence sum q_i ln(q_i/p_i) in nats, with 0 ln 0 := 0.
/// Returns +infinity iff q_i > 0 somewhere p_i = 0.
double kl_divergence(std::span<const double> q, std::span<const double> p);
double kl_divergence(const Pmf& q, const Pmf& p);

/// Chi-squared divergence sum (q_i - p_i)^2 / p_i over i with p_i > 0.
/// Returns +infinity iff q_i > 0 somewhere p_i = 0.
double chi2_divergence(std::span<const double> q, std::span<const double> p);
double chi2_divergence(const Pmf& q, const Pmf& p);

/// ln Gamma(t) for t > 0. Gamma itself is never materialized, so arguments
/// like n + K far beyond double overflow are fine.
double log_gamma(double t);

/// Product moment E[prod X_i^beta_i] for (X_1..X_n) ~ Dirichlet(alphas),
/// evaluated in log space as
///   exp{ lnG(sum a) - lnG(sum a+b) + sum [lnG(a_i+b_i) - lnG(a_i)] }.
/// All alphas must be positive, betas nonnegative; equal lengths required.
double dirichlet_product_moment(std::span<const double> alphas,
                                std::span<const double> betas);

/// Lower bound (a-b)^2 / (8 max(a,b)) on the binary AM-GM gap
/// (a+b)/2 - sqrt(ab). Requires a, b > 0.
double am_gm_gap_lower_bound(double a, double b);

struct GammaBoundChecks {
  bool gordon_ok = false;   // sqrt(2pi) t^(t-1/2) e^-t <= Gamma(t) <= ... e^(1/(12t))
  bool mortici_ok = false;  // Gamma(1+x) <= omega sqrt(2pi(x+1/6)) (x/e)^x
};

/// Evaluates both Gamma inequalities at (t, x); t > 0, x = 0 or x >= 1.
GammaBoundChecks gamma_bound_checks(double t, double x);

}  // namespace dnastore
