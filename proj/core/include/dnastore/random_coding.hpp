// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "dnastore/channel.hpp"
#include "dnastore/mathkit.hpp"
#include "dnastore/rng.hpp"

namespace dnastore {

/// A uniform draw from the interior of the probability simplex.
struct SimplexPoint {
  std::vector<double> probs;
};

/// Dirichlet(1,...,1) draw: n iid Exponential(1) variables, normalized.
/// Entries are strictly positive and sum to 1 within 1e-12. Requires n >= 2.
SimplexPoint draw_simplex(std::int64_t n, const RngStream& rng);

/// A codeword: counts_i = floor(M p_i) copies of type i, plus the
/// renormalized empirical PMF the decoder compares against.
struct QuantizedCodeword {
  CountVector counts;
  Pmf pmf;
};

/// Floor-quantizes a simplex point into a pool of between M - n and M
/// molecules. Throws std::domain_error if every count floors to zero
/// (possible only when M < n).
QuantizedCodeword quantize(const SimplexPoint& point, std::int64_t M);

struct Codebook {
  std::vector<QuantizedCodeword> codewords;
  std::int64_t n = 0;
  std::int64_t M = 0;
  // Seed provenance: codeword i was drawn from stream
  // (master_seed, stream_base + i).
  std::uint64_t master_seed = 0;
  std::uint64_t stream_base = 0;
};

/// size independent draw-then-quantize codewords; deterministic given rng.
/// Requires size >= 2 and M >= n.
Codebook generate_codebook(std::int64_t size, std::int64_t n, std::int64_t M,
                           const RngStream& rng);

struct MlDecision {
  std::size_t index = 0;      // argmin of KL(Q_hat || P_hat_m), ties to lowest
  bool all_infinite = false;  // every codeword missed some observed type
};

/// Minimum-KL (maximum-likelihood) decoding by exhaustive scan. A codeword
/// with zero mass on an observed type scores +infinity and loses every
/// comparison; if all codewords are infinite the lowest index is returned
/// with the event flagged.
MlDecision ml_decode(const ReadCounts& reads, const Codebook& book);

}  // namespace dnastore
