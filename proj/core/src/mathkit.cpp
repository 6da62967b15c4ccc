// SPDX-License-Identifier: Apache-2.0
#include "dnastore/mathkit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dnastore {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": length mismatch");
}
}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Pmf: empty");
  long double sum = 0.0L;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("Pmf: entry outside [0,1]");
    sum += p;
  }
  if (std::fabs(static_cast<double>(sum - 1.0L)) > kTolerances.pmf_sum_abs)
    throw std::invalid_argument("Pmf: entries do not sum to 1");
}

double kl_divergence(std::span<const double> q, std::span<const double> p) {
  require_same_length(q, p, "kl_divergence");
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;  // 0 ln 0 := 0
    if (p[i] == 0.0) return kInf;
    sum += q[i] * std::log(q[i] / p[i]);
  }
  return sum < 0.0 ? 0.0 : sum;  // clip tiny negative rounding residue
}

double kl_divergence(const Pmf& q, const Pmf& p) {
  return kl_divergence(std::span{q.probs()}, std::span{p.probs()});
}

double chi2_divergence(std::span<const double> q, std::span<const double> p) {
  require_same_length(q, p, "chi2_divergence");
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (p[i] == 0.0) {
      if (q[i] > 0.0) return kInf;
      continue;
    }
    const double d = q[i] - p[i];
    sum += d * d / p[i];
  }
  return sum;
}

double chi2_divergence(const Pmf& q, const Pmf& p) {
  return chi2_divergence(std::span{q.probs()}, std::span{p.probs()});
}

double log_gamma(double t) {
  if (!(t > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(t);
}

double dirichlet_product_moment(std::span<const double> alphas,
                                std::span<const double> betas) {
  require_same_length(alphas, betas, "dirichlet_product_moment");
  if (alphas.empty())
    throw std::invalid_argument("dirichlet_product_moment: empty parameter vectors");
  double sum_a = 0.0, sum_ab = 0.0, log_terms = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0))
      throw std::invalid_argument("dirichlet_product_moment: alphas must be positive");
    if (!(betas[i] >= 0.0))
      throw std::invalid_argument("dirichlet_product_moment: betas must be nonnegative");
    sum_a += alphas[i];
    sum_ab += alphas[i] + betas[i];
    log_terms += std::lgamma(alphas[i] + betas[i]) - std::lgamma(alphas[i]);
  }
  return std::exp(std::lgamma(sum_a) - std::lgamma(sum_ab) + log_terms);
}

double am_gm_gap_lower_bound(double a, double b) {
  if (!(a > 0.0 && b > 0.0))
    throw std::domain_error("am_gm_gap_lower_bound: inputs must be positive");
  const double d = a - b;
  return d * d / (8.0 * std::max(a, b));
}

GammaBoundChecks gamma_bound_checks(double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("gamma_bound_checks: t must be positive");
  if (!(x == 0.0 || x >= 1.0))
    throw std::domain_error("gamma_bound_checks: x must be 0 or >= 1");

  GammaBoundChecks checks;

  // Gordon sandwich, compared in log space. At large t the analytic margin
  // to the upper bound is ~1/(360 t^3), far below the rounding noise of
  // values of magnitude t ln t, so the comparison carries an epsilon slack.
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  const double stirling = half_log_2pi + (t - 0.5) * std::log(t) - t;
  const double lg = std::lgamma(t);
  const double slack =
      64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(lg));
  checks.gordon_ok = stirling <= lg + slack && lg <= stirling + 1.0 / (12.0 * t) + slack;

  // Mortici upper bound on Gamma(1+x) with omega = e sqrt(3/(7 pi));
  // x ln(x) -> 0 at x = 0 so the bound degenerates to 1 <= omega sqrt(pi/3).
  const double log_omega = 1.0 + 0.5 * std::log(3.0 / (7.0 * std::numbers::pi));
  const double x_log_x = x == 0.0 ? 0.0 : x * std::log(x);
  const double rhs = log_omega + 0.5 * std::log(2.0 * std::numbers::pi * (x + 1.0 / 6.0)) +
                     x_log_x - x;
  checks.mortici_ok = std::lgamma(1.0 + x) <= rhs;

  return checks;
}

}  // namespace dnastore
