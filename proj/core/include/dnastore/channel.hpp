// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnastore/mathkit.hpp"
#include "dnastore/rng.hpp"

namespace dnastore {

/// A molecular pool: copy counts per molecule type. Partition codewords
/// have total == M exactly; quantized random codewords have
/// total in [M - n, M].
struct CountVector {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

/// Builds a CountVector, validating nonnegative entries and a positive sum.
CountVector make_count_vector(std::vector<std::int64_t> counts);

/// Per-type counts of the K sampled reads (the channel output sufficient
/// statistic; reads are never materialized as strings).
struct ReadCounts {
  std::vector<std::int64_t> counts;
  std::int64_t K = 0;
};

/// Draws K reads uniformly with replacement from the pool and returns
/// per-type counts. The output is Multinomial(K, counts/total), realized
/// by sequential conditional binomials (O(n) per call). Pure given rng.
ReadCounts sample_reads(const CountVector& pool, std::int64_t K, const RngStream& rng);

/// Same draw continuing an existing engine (for callers that interleave
/// several draws on one stream).
ReadCounts sample_reads(const CountVector& pool, std::int64_t K, std::mt19937_64& eng);

/// Q_hat: counts / K.
Pmf to_frequency(const ReadCounts& reads);

/// Base-|A| expansion of a type index as a length-L string, for export
/// only (decoders operate on counts). Uses ACGT for |A| = 4.
std::string type_label(std::int64_t index, std::int64_t length, int alphabet_size);
std::int64_t type_index(const std::string& label, int alphabet_size);

}  // namespace dnastore
