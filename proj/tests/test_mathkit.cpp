// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dnastore/mathkit.hpp"
#include "dnastore/verify.hpp"

using namespace dnastore;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("Pmf validation") {
  CHECK_NOTHROW(Pmf({0.25, 0.25, 0.5}));
  CHECK_NOTHROW(Pmf({1.0, 0.0}));
  CHECK_THROWS_AS(Pmf({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf({1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("KL divergence basics") {
  const Pmf p({0.3, 0.7});
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(kl_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(kl_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0})) == kInf);
  const std::vector<double> a{0.5, 0.5}, b{0.2, 0.3, 0.5};
  CHECK_THROWS_AS(kl_divergence(std::span{a}, std::span{b}), std::invalid_argument);
}

TEST_CASE("chi-squared divergence basics") {
  const Pmf p({0.2, 0.8});
  CHECK(chi2_divergence(p, p) == 0.0);
  CHECK(chi2_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(chi2_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0})) == kInf);
  // matching zeros contribute nothing
  CHECK(chi2_divergence(Pmf({0.5, 0.5, 0.0}), Pmf({0.25, 0.75, 0.0})) ==
        doctest::Approx(0.25 / 0.25 * 0.25 + 0.0625 / 0.75));
}

TEST_CASE("log_gamma values and domain") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-12));
  // ln(10!) from the exact integer product
  std::int64_t fact10 = 1;
  for (int i = 2; i <= 10; ++i) fact10 *= i;
  CHECK(fact10 == 3628800);
  CHECK(log_gamma(11.0) ==
        doctest::Approx(std::log(static_cast<double>(fact10))).epsilon(1e-12));
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.0), std::domain_error);
}

TEST_CASE("Dirichlet product moments") {
  const std::vector<double> a2{1.0, 1.0}, b2{1.0, 1.0};
  CHECK(dirichlet_product_moment(a2, b2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const std::vector<double> a3{1.0, 1.0, 1.0}, zeros{0.0, 0.0, 0.0};
  CHECK(dirichlet_product_moment(a3, zeros) == 1.0);

  // E[X1 X2] on the 2-simplex = Gamma(3)/Gamma(5) * Gamma(2)Gamma(2) = 1/12.
  const std::vector<double> b3{1.0, 1.0, 0.0};
  CHECK(dirichlet_product_moment(a3, b3) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(dirichlet_product_moment(a3, bad), std::invalid_argument);
  const std::vector<double> nonpos{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(dirichlet_product_moment(nonpos, b3), std::invalid_argument);
}

TEST_CASE("AM-GM gap lower bound") {
  CHECK(am_gm_gap_lower_bound(3.0, 3.0) == 0.0);
  CHECK(am_gm_gap_lower_bound(4.0, 1.0) == doctest::Approx(9.0 / 32.0));
  const double gap = (4.0 + 1.0) / 2.0 - std::sqrt(4.0);
  CHECK(gap == doctest::Approx(0.5));
  CHECK(gap >= am_gm_gap_lower_bound(4.0, 1.0));
  CHECK_THROWS_AS(am_gm_gap_lower_bound(0.0, 1.0), std::domain_error);
}

TEST_CASE("Gamma inequality checks") {
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 100.0})
    CHECK(gamma_bound_checks(t, 0.0).gordon_ok);
  CHECK(gamma_bound_checks(1.0, 0.0).mortici_ok);  // holds at x = 0
  CHECK(gamma_bound_checks(1.0, 1.0).mortici_ok);
  CHECK(gamma_bound_checks(1.0, 12345.0).mortici_ok);
  CHECK_THROWS_AS(gamma_bound_checks(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_bound_checks(1.0, 0.5), std::domain_error);
}

TEST_CASE("property suites (quick)") {
  for (const char* suite : {"divergences", "gamma", "amgm", "stirling"}) {
    for (const CheckResult& r : run_verify_suite(suite, VerifyOptions::quick())) {
      INFO(r.name, ": ", r.detail);
      CHECK(r.passed);
    }
  }
}
