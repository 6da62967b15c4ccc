// SPDX-License-Identifier: Apache-2.0
#include "dnastore/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace dnastore {

namespace {
constexpr const char* kDnaAlphabet = "ACGT";
constexpr const char* kGenericAlphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

const char* alphabet_chars(int alphabet_size) {
  if (alphabet_size == 4) return kDnaAlphabet;
  if (alphabet_size < 2 || alphabet_size > 36)
    throw std::invalid_argument("type_label: alphabet size must lie in [2,36]");
  return kGenericAlphabet;
}
}  // namespace

CountVector make_count_vector(std::vector<std::int64_t> counts) {
  CountVector pool;
  pool.counts = std::move(counts);
  for (std::int64_t c : pool.counts) {
    if (c < 0) throw std::invalid_argument("CountVector: negative count");
    pool.total += c;
  }
  if (pool.total <= 0) throw std::invalid_argument("CountVector: empty pool");
  return pool;
}

ReadCounts sample_reads(const CountVector& pool, std::int64_t K, const RngStream& rng) {
  auto eng = make_engine(rng);
  return sample_reads(pool, K, eng);
}

ReadCounts sample_reads(const CountVector& pool, std::int64_t K, std::mt19937_64& eng) {
  if (pool.total <= 0) throw std::invalid_argument("sample_reads: empty pool");
  if (K < 1) throw std::invalid_argument("sample_reads: K must be >= 1");

  ReadCounts reads;
  reads.K = K;
  reads.counts.assign(pool.counts.size(), 0);

  std::int64_t remaining_mass = pool.total;
  std::int64_t remaining_reads = K;
  for (std::size_t i = 0; i < pool.counts.size() && remaining_reads > 0; ++i) {
    const std::int64_t mass = pool.counts[i];
    if (mass == 0) continue;
    if (mass == remaining_mass) {  // conditional probability is exactly 1
      reads.counts[i] = remaining_reads;
      remaining_reads = 0;
      break;
    }
    const double p = static_cast<double>(mass) / static_cast<double>(remaining_mass);
    std::binomial_distribution<std::int64_t> binom(remaining_reads, p);
    const std::int64_t c = binom(eng);
    reads.counts[i] = c;
    remaining_reads -= c;
    remaining_mass -= mass;
  }
  return reads;
}

Pmf to_frequency(const ReadCounts& reads) {
  if (reads.K < 1) throw std::invalid_argument("to_frequency: K must be >= 1");
  std::vector<double> probs(reads.counts.size());
  const double k = static_cast<double>(reads.K);
  for (std::size_t i = 0; i < probs.size(); ++i)
    probs[i] = static_cast<double>(reads.counts[i]) / k;
  return Pmf{std::move(probs)};
}

std::string type_label(std::int64_t index, std::int64_t length, int alphabet_size) {
  if (index < 0) throw std::invalid_argument("type_label: negative index");
  if (length < 1) throw std::invalid_argument("type_label: length must be >= 1");
  const char* chars = alphabet_chars(alphabet_size);
  std::string label(static_cast<std::size_t>(length), chars[0]);
  std::int64_t v = index;
  for (std::int64_t pos = length - 1; pos >= 0 && v > 0; --pos) {
    label[static_cast<std::size_t>(pos)] = chars[v % alphabet_size];
    v /= alphabet_size;
  }
  if (v > 0) throw std::invalid_argument("type_label: index does not fit in length");
  return label;
}

std::int64_t type_index(const std::string& label, int alphabet_size) {
  const char* chars = alphabet_chars(alphabet_size);
  std::int64_t value = 0;
  for (char c : label) {
    const char* pos = std::find(chars, chars + alphabet_size, c);
    if (pos == chars + alphabet_size)
      throw std::invalid_argument("type_index: character outside alphabet");
    value = value * alphabet_size + (pos - chars);
  }
  return value;
}

}  // namespace dnastore
