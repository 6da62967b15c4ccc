// SPDX-License-Identifier: Apache-2.0
#include "dnastore/partition_code.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dnastore {

namespace {

void validate_sizes(const DerivedSizes& sizes) {
  if (sizes.num_subsets < 1 || sizes.subset_size < 1)
    throw std::invalid_argument("partition code: subset counts must be positive");
  if (sizes.n_eff != sizes.num_subsets * sizes.subset_size)
    throw std::invalid_argument("partition code: n_eff != num_subsets * subset_size");
  if (sizes.n < sizes.n_eff)
    throw std::invalid_argument("partition code: n_eff exceeds n");
}

}  // namespace

WeightLadder weight_ladder(std::int64_t num_subsets) {
  if (num_subsets < 1)
    throw std::invalid_argument("weight_ladder: num_subsets must be >= 1");
  const BigInt s2 = BigInt{num_subsets} * num_subsets;
  WeightLadder ladder;
  ladder.common_difference = BigRational{2, s2};
  ladder.weights.reserve(static_cast<std::size_t>(num_subsets));
  const BigRational last{1, s2};
  for (std::int64_t l = 1; l <= num_subsets; ++l)
    ladder.weights.push_back(last + ladder.common_difference * (num_subsets - l));
  return ladder;
}

SubsetCounts subset_counts(std::int64_t M, const DerivedSizes& sizes) {
  validate_sizes(sizes);
  if (M < sizes.n_eff)
    throw std::domain_error("subset_counts: M < n_eff, not every type is representable");

  const WeightLadder ladder = weight_ladder(sizes.num_subsets);
  const std::int64_t w = sizes.subset_size;

  SubsetCounts counts;
  BigInt tail_total = 0;
  for (std::int64_t i = 2; i <= sizes.num_subsets; ++i) {
    const BigRational exact = BigRational{M} * ladder.weights[static_cast<std::size_t>(i - 1)] / w;
    const BigInt n_i = floor_rational(exact);
    counts.tail_counts.push_back(n_i.convert_to<std::int64_t>());
    tail_total += n_i;
  }
  if (!counts.tail_counts.empty() && counts.tail_counts.back() == 0)
    throw std::domain_error("subset_counts: last subset would receive zero copies per type");

  // Exact remaining budget, spread over the subset_size types of the first
  // subset with difference <= 1; lower type indices take the extra units.
  const std::int64_t remaining = M - (BigInt{w} * tail_total).convert_to<std::int64_t>();
  const std::int64_t base = remaining / w;
  const std::int64_t extra = remaining % w;
  counts.first_subset_counts.assign(static_cast<std::size_t>(w), base);
  for (std::int64_t j = 0; j < extra; ++j) counts.first_subset_counts[static_cast<std::size_t>(j)] += 1;

  if (base < 1)
    throw std::domain_error("subset_counts: first subset would receive zero copies per type");
  if (sizes.num_subsets >= 2 && base <= counts.tail_counts.front())
    throw std::domain_error("subset_counts: first subset does not dominate the second");
  return counts;
}

void validate_message(const PartitionMessage& msg, const DerivedSizes& sizes) {
  validate_sizes(sizes);
  if (msg.assignment.size() != static_cast<std::size_t>(sizes.n_eff))
    throw std::invalid_argument("message: assignment length != n_eff");
  std::vector<std::int64_t> multiplicity(static_cast<std::size_t>(sizes.num_subsets), 0);
  for (std::int32_t subset : msg.assignment) {
    if (subset < 1 || subset > sizes.num_subsets)
      throw std::invalid_argument("message: subset id out of range");
    multiplicity[static_cast<std::size_t>(subset - 1)] += 1;
  }
  for (std::int64_t m : multiplicity)
    if (m != sizes.subset_size)
      throw std::invalid_argument("message: subset multiplicities must equal subset_size");
}

BigInt codebook_size(const DerivedSizes& sizes) {
  validate_sizes(sizes);
  const auto fact = factorial_table(sizes.n_eff);
  BigInt denom = 1;
  const BigInt w_fact = fact[static_cast<std::size_t>(sizes.subset_size)];
  for (std::int64_t i = 0; i < sizes.num_subsets; ++i) denom *= w_fact;
  return fact[static_cast<std::size_t>(sizes.n_eff)] / denom;
}

PartitionMessage unrank(const BigInt& index, const DerivedSizes& sizes) {
  validate_sizes(sizes);
  BigInt remaining_index = index;
  BigInt completions = codebook_size(sizes);
  if (index < 0 || index >= completions)
    throw std::out_of_range("unrank: index outside [0, codebook_size)");

  std::vector<std::int64_t> capacity(static_cast<std::size_t>(sizes.num_subsets),
                                     sizes.subset_size);
  PartitionMessage msg;
  msg.assignment.resize(static_cast<std::size_t>(sizes.n_eff));
  std::int64_t slots = sizes.n_eff;
  for (std::int64_t pos = 0; pos < sizes.n_eff; ++pos) {
    for (std::int64_t subset = 1; subset <= sizes.num_subsets; ++subset) {
      const std::int64_t cap = capacity[static_cast<std::size_t>(subset - 1)];
      if (cap == 0) continue;
      // Completions that put `subset` here: completions * cap / slots, exact.
      const BigInt with_subset = completions * cap / slots;
      if (remaining_index < with_subset) {
        msg.assignment[static_cast<std::size_t>(pos)] = static_cast<std::int32_t>(subset);
        completions = with_subset;
        capacity[static_cast<std::size_t>(subset - 1)] -= 1;
        break;
      }
      remaining_index -= with_subset;
    }
    slots -= 1;
  }
  return msg;
}

BigInt rank(const PartitionMessage& msg, const DerivedSizes& sizes) {
  validate_message(msg, sizes);
  std::vector<std::int64_t> capacity(static_cast<std::size_t>(sizes.num_subsets),
                                     sizes.subset_size);
  BigInt completions = codebook_size(sizes);
  BigInt result = 0;
  std::int64_t slots = sizes.n_eff;
  for (std::int32_t chosen : msg.assignment) {
    for (std::int64_t subset = 1; subset < chosen; ++subset) {
      const std::int64_t cap = capacity[static_cast<std::size_t>(subset - 1)];
      if (cap == 0) continue;
      result += completions * cap / slots;
    }
    const std::int64_t cap = capacity[static_cast<std::size_t>(chosen - 1)];
    completions = completions * cap / slots;
    capacity[static_cast<std::size_t>(chosen - 1)] -= 1;
    slots -= 1;
  }
  return result;
}

CountVector encode(const PartitionMessage& msg, const SubsetCounts& counts,
                   const DerivedSizes& sizes) {
  validate_message(msg, sizes);
  CountVector pool;
  pool.counts.assign(static_cast<std::size_t>(sizes.n), 0);
  std::int64_t first_rank = 0;  // ascending type order within subset 1
  for (std::int64_t t = 0; t < sizes.n_eff; ++t) {
    const std::int32_t subset = msg.assignment[static_cast<std::size_t>(t)];
    const std::int64_t copies =
        subset == 1 ? counts.copies_for(1, first_rank++) : counts.copies_for(subset, 0);
    pool.counts[static_cast<std::size_t>(t)] = copies;
    pool.total += copies;
  }
  return pool;
}

std::optional<PartitionMessage> decode(const ReadCounts& reads, const DerivedSizes& sizes,
                                       bool strict_zero_rule) {
  validate_sizes(sizes);
  if (reads.counts.size() < static_cast<std::size_t>(sizes.n_eff))
    throw std::invalid_argument("decode: reads cover fewer than n_eff types");

  std::int64_t zeros = 0;
  for (std::int64_t t = 0; t < sizes.n_eff; ++t)
    if (reads.counts[static_cast<std::size_t>(t)] == 0) ++zeros;
  if (strict_zero_rule ? zeros > 0 : zeros > sizes.subset_size) return std::nullopt;

  std::vector<std::int64_t> order(static_cast<std::size_t>(sizes.n_eff));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const std::int64_t ca = reads.counts[static_cast<std::size_t>(a)];
    const std::int64_t cb = reads.counts[static_cast<std::size_t>(b)];
    return ca != cb ? ca > cb : a < b;
  });

  PartitionMessage msg;
  msg.assignment.resize(static_cast<std::size_t>(sizes.n_eff));
  for (std::int64_t k = 0; k < sizes.n_eff; ++k)
    msg.assignment[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
        static_cast<std::int32_t>(k / sizes.subset_size + 1);
  return msg;
}

}  // namespace dnastore
