// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dnastore/bigint.hpp"
#include "dnastore/channel.hpp"
#include "dnastore/params.hpp"

namespace dnastore {

/// The decreasing arithmetic PMF over subsets: last term 1/s^2, common
/// difference 2/s^2, R(l) = R(s) + d (s - l). Sums to 1 exactly.
struct WeightLadder {
  std::vector<BigRational> weights;  // R(1..s)
  BigRational common_difference;     // d
};

WeightLadder weight_ladder(std::int64_t num_subsets);

/// Copy counts per subset. Subsets i >= 2 assign tail_counts[i-2] copies to
/// each member; the first subset's members receive first_subset_counts
/// (entries differ by at most 1, larger shares at lower type indices), so
/// every codeword is composed of exactly M molecules.
struct SubsetCounts {
  std::vector<std::int64_t> tail_counts;          // N(2..s)
  std::vector<std::int64_t> first_subset_counts;  // one per member of subset 1

  std::int64_t copies_for(std::int64_t subset, std::int64_t member_rank) const {
    return subset == 1 ? first_subset_counts[static_cast<std::size_t>(member_rank)]
                       : tail_counts[static_cast<std::size_t>(subset - 2)];
  }
};

/// Computes N(i) = floor(M R(i) / subset_size) for i >= 2 in exact rational
/// arithmetic and spreads the exact remaining budget over subset 1.
/// Throws std::domain_error when the parameters cannot host a decodable
/// code: M < n_eff, some type would receive zero copies, or the first
/// subset would not dominate the second.
SubsetCounts subset_counts(std::int64_t M, const DerivedSizes& sizes);

/// A message: assignment[t] in [1..num_subsets] is the subset of type t;
/// every subset id appears exactly subset_size times.
struct PartitionMessage {
  std::vector<std::int32_t> assignment;

  bool operator==(const PartitionMessage&) const = default;
};

void validate_message(const PartitionMessage& msg, const DerivedSizes& sizes);

/// Number of messages: n_eff! / (subset_size!)^num_subsets, exact.
BigInt codebook_size(const DerivedSizes& sizes);

/// index-th assignment vector in lexicographic order (subset ids compared
/// numerically, positions left to right). Requires 0 <= index < codebook_size.
PartitionMessage unrank(const BigInt& index, const DerivedSizes& sizes);

/// Inverse of unrank.
BigInt rank(const PartitionMessage& msg, const DerivedSizes& sizes);

/// Builds a molecular pool of exactly M molecules over sizes.n types;
/// types beyond n_eff receive zero copies.
CountVector encode(const PartitionMessage& msg, const SubsetCounts& counts,
                   const DerivedSizes& sizes);

/// Sort-based decoder. Under the strict zero rule any zero count among the
/// first n_eff types fails; relaxed, failure requires more than subset_size
/// zeros. Otherwise types are sorted by count (descending, ties to the
/// lower type index) and cut into consecutive subsets. Returns nullopt on
/// the zero-count failure, counted as an error by the harness.
std::optional<PartitionMessage> decode(const ReadCounts& reads, const DerivedSizes& sizes,
                                       bool strict_zero_rule = true);

}  // namespace dnastore
