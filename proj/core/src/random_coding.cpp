// SPDX-License-Identifier: Apache-2.0
#include "dnastore/random_coding.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnastore {

SimplexPoint draw_simplex(std::int64_t n, const RngStream& rng) {
  if (n < 2) throw std::invalid_argument("draw_simplex: n must be >= 2");
  auto eng = make_engine(rng);
  SimplexPoint point;
  point.probs.resize(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : point.probs) {
    x = exponential_unit(eng);
    sum += x;
  }
  for (double& x : point.probs) x /= sum;
  return point;
}

QuantizedCodeword quantize(const SimplexPoint& point, std::int64_t M) {
  if (M < 1) throw std::invalid_argument("quantize: M must be >= 1");
  CountVector counts;
  counts.counts.resize(point.probs.size());
  for (std::size_t i = 0; i < point.probs.size(); ++i) {
    const auto c = static_cast<std::int64_t>(std::floor(static_cast<double>(M) * point.probs[i]));
    counts.counts[i] = c;
    counts.total += c;
  }
  if (counts.total == 0)
    throw std::domain_error("quantize: all counts floored to zero (M < n?)");

  std::vector<double> pmf(counts.counts.size());
  const double total = static_cast<double>(counts.total);
  for (std::size_t i = 0; i < pmf.size(); ++i)
    pmf[i] = static_cast<double>(counts.counts[i]) / total;
  return QuantizedCodeword{std::move(counts), Pmf{std::move(pmf)}};
}

Codebook generate_codebook(std::int64_t size, std::int64_t n, std::int64_t M,
                           const RngStream& rng) {
  if (size < 2) throw std::invalid_argument("generate_codebook: size must be >= 2");
  if (M < n) throw std::domain_error("generate_codebook: M < n is infeasible");
  Codebook book;
  book.n = n;
  book.M = M;
  book.master_seed = rng.master_seed;
  book.stream_base = rng.stream_index;
  book.codewords.reserve(static_cast<std::size_t>(size));
  for (std::int64_t i = 0; i < size; ++i) {
    const RngStream stream{rng.master_seed, rng.stream_index + static_cast<std::uint64_t>(i)};
    book.codewords.push_back(quantize(draw_simplex(n, stream), M));
  }
  return book;
}

MlDecision ml_decode(const ReadCounts& reads, const Codebook& book) {
  if (book.codewords.empty()) throw std::invalid_argument("ml_decode: empty codebook");
  if (reads.counts.size() != static_cast<std::size_t>(book.n))
    throw std::invalid_argument("ml_decode: reads length != n");

  const Pmf freq = to_frequency(reads);
  MlDecision decision;
  double best = std::numeric_limits<double>::infinity();
  bool any_finite = false;
  for (std::size_t m = 0; m < book.codewords.size(); ++m) {
    const double d = kl_divergence(freq, book.codewords[m].pmf);
    if (d < best) {  // strict: ties stay at the lowest index
      best = d;
      decision.index = m;
    }
    any_finite = any_finite || std::isfinite(d);
  }
  decision.all_infinite = !any_finite;
  return decision;
}

}  // namespace dnastore
