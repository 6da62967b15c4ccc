// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dnastore/params.hpp"

using namespace dnastore;

TEST_CASE("derive matches the worked examples") {
  SUBCASE("M=65536, |A|=2, beta=0.5, xi=1, rho=0.5") {
    const DerivedSizes sizes = derive({65536, 2, 0.5, 1.0, 0.5});
    CHECK(sizes.n == 46);  // floor(65536^(0.5 ln 2)) = floor(46.694...)
    CHECK(sizes.L == 6);   // ceil(0.5 ln 65536) = ceil(5.545...)
    CHECK(sizes.K == 65536);
    CHECK(sizes.num_subsets == 6);
    CHECK(sizes.subset_size == 6);
    CHECK(sizes.n_eff == 36);
  }
  SUBCASE("tiny beta clamps n to 2") {
    const DerivedSizes sizes = derive({16, 2, 1e-9, 1.0, 1.0});
    CHECK(sizes.n == 2);
    CHECK(sizes.K == 16);
    CHECK(sizes.num_subsets == 2);
    CHECK(sizes.subset_size == 1);
    CHECK(sizes.n_eff == 2);
  }
  SUBCASE("M=160, |A|=4, beta solved for n=8, xi=2, rho=0.5") {
    // Solve floor(160^(beta ln 4)) = 8 by aiming at mid-band 8.5.
    const double beta = std::log(8.5) / (std::log(4.0) * std::log(160.0));
    const DerivedSizes sizes = derive({160, 4, beta, 2.0, 0.5});
    CHECK(sizes.n == 8);
    CHECK(sizes.K == 320);
    CHECK(sizes.num_subsets == 2);
    CHECK(sizes.subset_size == 2);
    CHECK(sizes.n_eff == 4);
  }
}

TEST_CASE("derive rejects invalid parameters") {
  CHECK_THROWS_AS(derive({0, 2, 0.5, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(derive({16, 1, 0.5, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(derive({16, 2, 0.0, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(derive({16, 2, 0.5, 0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(derive({16, 2, 0.5, 1.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(derive({16, 2, 0.5, 1.0, 1.1}), std::invalid_argument);
}

TEST_CASE("short-molecule regime predicate") {
  CHECK(in_short_molecule_regime({100, 2, 0.5, 1.0, 0.5}));
  CHECK_FALSE(in_short_molecule_regime({100, 2, 2.0, 1.0, 0.5}));
}

TEST_CASE("floor_pow hits exact integer powers") {
  CHECK(floor_pow(49, 0.5) == 7);
  CHECK(floor_pow(1024, 0.5) == 32);
  CHECK(floor_pow(8, 1.0 / 3.0) == 2);
  CHECK(floor_pow(1000000000000LL, 1.0) == 1000000000000LL);
  CHECK(floor_pow(12345, 0.0) == 1);
  CHECK(floor_pow(46, 0.5) == 6);
  CHECK_THROWS_AS(floor_pow(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(floor_pow(4, 1.5), std::invalid_argument);
}

TEST_CASE("n_eff never exceeds n") {
  for (std::int64_t n = 2; n <= 500; ++n) {
    for (double rho = 0.0; rho <= 1.0; rho += 0.125) {
      const std::int64_t s = floor_pow(n, rho);
      const std::int64_t w = floor_pow(n, 1.0 - rho);
      CHECK(s * w <= n);
      CHECK(s >= 1);
      CHECK(w >= 1);
    }
  }
}

TEST_CASE("derive is pure and monotone") {
  const SystemParams base{4096, 2, 0.5, 1.0, 0.5};
  const DerivedSizes once = derive(base);
  const DerivedSizes twice = derive(base);
  CHECK(once.n == twice.n);
  CHECK(once.K == twice.K);

  std::int64_t prev_n = 0;
  for (std::int64_t m = 16; m <= (1 << 20); m *= 2) {
    const DerivedSizes sizes = derive({m, 2, 0.5, 1.0, 0.5});
    CHECK(sizes.n >= prev_n);
    prev_n = sizes.n;
  }
  prev_n = 0;
  for (double beta = 0.1; beta <= 1.4; beta += 0.1) {
    const DerivedSizes sizes = derive({4096, 2, beta, 1.0, 0.5});
    CHECK(sizes.n >= prev_n);
    prev_n = sizes.n;
  }
}

TEST_CASE("K rounds to nearest") {
  CHECK(derive({10, 2, 0.5, 0.26, 0.5}).K == 3);   // 2.6 -> 3
  CHECK(derive({10, 2, 0.5, 0.24, 0.5}).K == 2);   // 2.4 -> 2
  CHECK(derive({10, 2, 0.5, 0.01, 0.5}).K == 1);   // clamp to >= 1
}
