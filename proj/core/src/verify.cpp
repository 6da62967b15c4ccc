// SPDX-License-Identifier: Apache-2.0
#include "dnastore/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dnastore/bounds.hpp"
#include "dnastore/channel.hpp"
#include "dnastore/mathkit.hpp"
#include "dnastore/random_coding.hpp"
#include "dnastore/rng.hpp"

namespace dnastore {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

// 0 <= KL <= ln(1 + chi2) <= chi2 on random same-support PMF pairs.
CheckResult divergence_sandwich(const VerifyOptions& opt) {
  std::int64_t violations = 0;
  for (std::int64_t i = 0; i < opt.pmf_pairs; ++i) {
    const RngStream stream{opt.seed, static_cast<std::uint64_t>(i)};
    auto eng = make_engine(stream);
    const auto n = static_cast<std::int64_t>(2 + uniform_below(eng, 11));
    const SimplexPoint q = draw_simplex(n, {opt.seed, 0x10000000ull + static_cast<std::uint64_t>(i)});
    const SimplexPoint p = draw_simplex(n, {opt.seed, 0x20000000ull + static_cast<std::uint64_t>(i)});
    const double kl = kl_divergence(std::span{q.probs}, std::span{p.probs});
    const double chi2 = chi2_divergence(std::span{q.probs}, std::span{p.probs});
    const double mid = std::log1p(chi2);
    const double slack = 1e-12 * std::max(1.0, chi2);
    if (!(kl >= 0.0 && kl <= mid + slack && mid <= chi2 + slack)) ++violations;
  }
  return check("kl-chi2-sandwich", violations == 0,
               std::to_string(opt.pmf_pairs) + " pairs, " + std::to_string(violations) +
                   " violations");
}

CheckResult gordon_sandwich() {
  std::int64_t violations = 0;
  std::int64_t points = 0;
  for (double t = 1e-3; t <= 1e6; t *= 1.2) {
    ++points;
    if (!gamma_bound_checks(t, 0.0).gordon_ok) ++violations;
  }
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
    ++points;
    if (!gamma_bound_checks(t, 0.0).gordon_ok) ++violations;
  }
  return check("gordon-gamma-sandwich", violations == 0,
               std::to_string(points) + " grid points, " + std::to_string(violations) +
                   " violations");
}

CheckResult mortici_upper() {
  std::int64_t violations = 0;
  std::int64_t points = 1;
  if (!gamma_bound_checks(1.0, 0.0).mortici_ok) ++violations;  // holds at x = 0 too
  for (double x = 1.0; x <= 1e6; x *= 1.3) {
    ++points;
    if (!gamma_bound_checks(1.0, x).mortici_ok) ++violations;
  }
  return check("mortici-gamma-upper", violations == 0,
               std::to_string(points) + " grid points, " + std::to_string(violations) +
                   " violations");
}

CheckResult lgamma_recurrence() {
  std::int64_t violations = 0;
  std::int64_t points = 0;
  for (double t = 1e-3; t <= 1e8; t *= 1.5) {
    ++points;
    const double lhs = log_gamma(t + 1.0);
    const double rhs = log_gamma(t) + std::log(t);
    if (std::fabs(lhs - rhs) > 1e-10 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)}))
      ++violations;
  }
  return check("lgamma-recurrence", violations == 0,
               std::to_string(points) + " grid points, " + std::to_string(violations) +
                   " violations");
}

CheckResult amgm_refinement(const VerifyOptions& opt) {
  auto eng = make_engine({opt.seed, 0x30000000ull});
  std::int64_t violations = 0;
  for (std::int64_t i = 0; i < opt.amgm_pairs; ++i) {
    const double a = 10.0 * uniform_unit_open(eng);
    const double b = 10.0 * uniform_unit_open(eng);
    // (a+b)/2 - sqrt(ab) computed as (sqrt a - sqrt b)^2 / 2 to dodge
    // cancellation for near-equal pairs.
    const double s = std::sqrt(a) - std::sqrt(b);
    const double gap = 0.5 * s * s;
    if (gap < am_gm_gap_lower_bound(a, b)) ++violations;
  }
  return check("amgm-refinement", violations == 0,
               std::to_string(opt.amgm_pairs) + " pairs, " + std::to_string(violations) +
                   " violations");
}

CheckResult dirichlet_moments(const VerifyOptions& opt) {
  struct Probe {
    std::vector<double> betas;
  };
  const std::vector<Probe> probes = {
      {{1.0, 1.0}},                  // E[X (1-X)] = 1/6 for Uniform(0,1)
      {{3.0, 2.0}},
      {{1.0, 1.0, 0.0}},             // E[X1 X2] = 1/12 on the 2-simplex
      {{1.0, 2.0, 0.0}},
      {{2.0, 1.0, 1.0, 0.0}},
      {{1.0, 1.0, 1.0, 1.0, 1.0}},
  };

  // Analytic anchors first.
  {
    const std::vector<double> a{1.0, 1.0}, b{1.0, 1.0};
    if (std::fabs(dirichlet_product_moment(a, b) - 1.0 / 6.0) > 1e-12)
      return check("dirichlet-moments", false, "closed form at alpha=(1,1), beta=(1,1)");
    const std::vector<double> a3{1.0, 1.0, 1.0}, zero{0.0, 0.0, 0.0};
    if (dirichlet_product_moment(a3, zero) != 1.0)
      return check("dirichlet-moments", false, "empty moment must be exactly 1");
  }

  double worst_sigmas = 0.0;
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    const auto& betas = probes[pi].betas;
    const auto n = static_cast<std::int64_t>(betas.size());
    const std::vector<double> alphas(betas.size(), 1.0);
    const double closed = dirichlet_product_moment(alphas, betas);

    long double sum = 0.0L, sum_sq = 0.0L;
    for (std::int64_t d = 0; d < opt.dirichlet_draws; ++d) {
      const SimplexPoint x =
          draw_simplex(n, {opt.seed, (static_cast<std::uint64_t>(pi) << 40) +
                                         static_cast<std::uint64_t>(d)});
      double prod = 1.0;
      for (std::size_t i = 0; i < betas.size(); ++i)
        if (betas[i] != 0.0) prod *= std::pow(x.probs[i], betas[i]);
      sum += prod;
      sum_sq += static_cast<long double>(prod) * prod;
    }
    const double nd = static_cast<double>(opt.dirichlet_draws);
    const double mean = static_cast<double>(sum) / nd;
    const double var =
        std::max(0.0, static_cast<double>(sum_sq) / nd - mean * mean);
    const double se = std::sqrt(var / nd);
    const double sigmas = se > 0.0 ? std::fabs(mean - closed) / se
                                   : (mean == closed ? 0.0 : 1e9);
    worst_sigmas = std::max(worst_sigmas, sigmas);
  }
  return check("dirichlet-moments", worst_sigmas <= kTolerances.mc_sigmas,
               std::to_string(probes.size()) + " probes x " +
                   std::to_string(opt.dirichlet_draws) +
                   " draws, worst deviation " + fmt(worst_sigmas) + " sigma");
}

CheckResult chi2_mean_identity(const VerifyOptions& opt) {
  struct Point {
    std::int64_t n, K;
  };
  double worst_sigmas = 0.0;
  for (const Point point : {Point{5, 50}, Point{20, 400}}) {
    // Non-uniform full-support pool.
    std::vector<std::int64_t> pool_counts(static_cast<std::size_t>(point.n));
    for (std::int64_t i = 0; i < point.n; ++i)
      pool_counts[static_cast<std::size_t>(i)] = 3 * point.n - 2 * i;  // decreasing
    const CountVector pool = make_count_vector(pool_counts);
    std::vector<double> p_hat(pool.counts.size());
    for (std::size_t i = 0; i < p_hat.size(); ++i)
      p_hat[i] = static_cast<double>(pool.counts[i]) / static_cast<double>(pool.total);

    long double sum = 0.0L, sum_sq = 0.0L;
    for (std::int64_t t = 0; t < opt.chi2_trials; ++t) {
      const ReadCounts reads = sample_reads(
          pool, point.K,
          RngStream{opt.seed, (static_cast<std::uint64_t>(point.n) << 40) +
                                  static_cast<std::uint64_t>(t)});
      const Pmf freq = to_frequency(reads);
      const double chi2 = chi2_divergence(std::span{freq.probs()}, std::span{p_hat});
      sum += chi2;
      sum_sq += static_cast<long double>(chi2) * chi2;
    }
    const double nd = static_cast<double>(opt.chi2_trials);
    const double mean = static_cast<double>(sum) / nd;
    const double var = std::max(0.0, static_cast<double>(sum_sq) / nd - mean * mean);
    const double se = std::sqrt(var / nd);
    const double expected = static_cast<double>(point.n - 1) / static_cast<double>(point.K);
    const double sigmas = std::fabs(mean - expected) / se;
    worst_sigmas = std::max(worst_sigmas, sigmas);
  }
  return check("chi2-mean", worst_sigmas <= kTolerances.mc_sigmas,
               "two (n,K) points x " + std::to_string(opt.chi2_trials) +
                   " trials, worst deviation " + fmt(worst_sigmas) + " sigma");
}

CheckResult stirling_sandwich() {
  std::int64_t violations = 0;
  std::int64_t points = 0;
  for (std::int64_t n = 1; n <= 1000000; n = std::max(n + 1, (n * 13) / 10)) {
    ++points;
    if (!stirling_bounds_hold(n)) ++violations;
  }
  return check("stirling-sandwich", violations == 0,
               std::to_string(points) + " factorials, " + std::to_string(violations) +
                   " violations");
}

CheckResult quantize_range(const VerifyOptions& opt) {
  auto eng = make_engine({opt.seed, 0x40000000ull});
  std::int64_t violations = 0;
  const std::int64_t cases = 1000;
  for (std::int64_t i = 0; i < cases; ++i) {
    const auto n = static_cast<std::int64_t>(2 + uniform_below(eng, 49));
    const std::int64_t M =
        n + static_cast<std::int64_t>(uniform_below(eng, 1000000));
    const SimplexPoint p =
        draw_simplex(n, {opt.seed, 0x50000000ull + static_cast<std::uint64_t>(i)});
    const QuantizedCodeword cw = quantize(p, M);
    if (cw.counts.total < M - n || cw.counts.total > M) ++violations;
    for (std::size_t j = 0; j < p.probs.size(); ++j) {
      const double scaled = static_cast<double>(M) * p.probs[j];
      const auto c = static_cast<double>(cw.counts.counts[j]);
      if (!(c <= scaled && scaled < c + 1.0)) ++violations;
    }
  }
  return check("quantize-range", violations == 0,
               std::to_string(cases) + " cases, " + std::to_string(violations) +
                   " violations");
}

// argmin KL(Q || P_m) must agree with argmax sum_i U(i) ln P_m(i).
CheckResult decoder_equivalence(const VerifyOptions& opt) {
  std::int64_t disagreements = 0;
  for (std::int64_t i = 0; i < opt.equivalence_cases; ++i) {
    auto eng = make_engine({opt.seed, 0x60000000ull + static_cast<std::uint64_t>(i)});
    const auto n = static_cast<std::int64_t>(3 + uniform_below(eng, 6));
    const auto size = static_cast<std::int64_t>(2 + uniform_below(eng, 7));
    const std::int64_t M = 50 + static_cast<std::int64_t>(uniform_below(eng, 450));
    const Codebook book = generate_codebook(
        size, n, M, {opt.seed, 0x70000000ull + (static_cast<std::uint64_t>(i) << 16)});
    const std::uint64_t sent = uniform_below(eng, static_cast<std::uint64_t>(size));
    const std::int64_t K = 4 + static_cast<std::int64_t>(uniform_below(eng, 60));
    const ReadCounts reads = sample_reads(book.codewords[sent].counts, K, eng);

    const MlDecision kl_choice = ml_decode(reads, book);
    std::size_t ll_choice = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < book.codewords.size(); ++m) {
      double ll = 0.0;
      for (std::size_t t = 0; t < reads.counts.size(); ++t) {
        if (reads.counts[t] == 0) continue;
        const double p = book.codewords[m].pmf[t];
        if (p == 0.0) {
          ll = -std::numeric_limits<double>::infinity();
          break;
        }
        ll += static_cast<double>(reads.counts[t]) * std::log(p);
      }
      if (ll > best) {
        best = ll;
        ll_choice = m;
      }
    }
    const bool any_finite = std::isfinite(best);
    if (any_finite && kl_choice.index != ll_choice) ++disagreements;
  }
  return check("decoder-equivalence", disagreements == 0,
               std::to_string(opt.equivalence_cases) + " instances, " +
                   std::to_string(disagreements) + " disagreements");
}

}  // namespace

VerifyOptions VerifyOptions::quick() {
  VerifyOptions opt;
  opt.pmf_pairs = 2000;
  opt.amgm_pairs = 2000;
  opt.dirichlet_draws = 100000;
  opt.chi2_trials = 20000;
  opt.equivalence_cases = 200;
  return opt;
}

std::vector<std::string> verify_suite_names() {
  return {"divergences", "gamma",    "amgm",     "dirichlet",
          "chi2-mean",   "stirling", "quantize", "decoder"};
}

std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& options) {
  std::vector<CheckResult> results;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "divergences") {
    results.push_back(divergence_sandwich(options));
    known = true;
  }
  if (all || suite == "gamma") {
    results.push_back(gordon_sandwich());
    results.push_back(mortici_upper());
    results.push_back(lgamma_recurrence());
    known = true;
  }
  if (all || suite == "amgm") {
    results.push_back(amgm_refinement(options));
    known = true;
  }
  if (all || suite == "dirichlet") {
    results.push_back(dirichlet_moments(options));
    known = true;
  }
  if (all || suite == "chi2-mean") {
    results.push_back(chi2_mean_identity(options));
    known = true;
  }
  if (all || suite == "stirling") {
    results.push_back(stirling_sandwich());
    known = true;
  }
  if (all || suite == "quantize") {
    results.push_back(quantize_range(options));
    known = true;
  }
  if (all || suite == "decoder") {
    results.push_back(decoder_equivalence(options));
    known = true;
  }
  if (!known) throw std::invalid_argument("unknown verify suite: " + suite);
  return results;
}

}  // namespace dnastore
