// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the per-trial hot path: channel sampling, sort-based
// decoding, message unranking, and exhaustive ML decoding.
#include <benchmark/benchmark.h>

#include <cmath>

#include "dnastore/bigint.hpp"
#include "dnastore/channel.hpp"
#include "dnastore/harness.hpp"
#include "dnastore/params.hpp"
#include "dnastore/partition_code.hpp"
#include "dnastore/random_coding.hpp"
#include "dnastore/rng.hpp"

namespace {

using namespace dnastore;

const SystemParams kAnchor{65536, 2, 0.5, 1.0, 0.5};

void BM_SampleReads(benchmark::State& state) {
  const DerivedSizes sizes = derive(kAnchor);
  const SubsetCounts counts = subset_counts(kAnchor.M, sizes);
  PartitionMessage identity;
  identity.assignment.resize(static_cast<std::size_t>(sizes.n_eff));
  for (std::int64_t t = 0; t < sizes.n_eff; ++t)
    identity.assignment[static_cast<std::size_t>(t)] =
        static_cast<std::int32_t>(t / sizes.subset_size + 1);
  const CountVector pool = encode(identity, counts, sizes);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    const ReadCounts reads = sample_reads(pool, sizes.K, RngStream{1, stream++});
    benchmark::DoNotOptimize(reads.counts.data());
  }
}
BENCHMARK(BM_SampleReads);

void BM_PcDecode(benchmark::State& state) {
  const DerivedSizes sizes = derive(kAnchor);
  const SubsetCounts counts = subset_counts(kAnchor.M, sizes);
  PartitionMessage identity;
  identity.assignment.resize(static_cast<std::size_t>(sizes.n_eff));
  for (std::int64_t t = 0; t < sizes.n_eff; ++t)
    identity.assignment[static_cast<std::size_t>(t)] =
        static_cast<std::int32_t>(t / sizes.subset_size + 1);
  const CountVector pool = encode(identity, counts, sizes);
  const ReadCounts reads = sample_reads(pool, sizes.K, RngStream{2, 0});
  for (auto _ : state) {
    auto decoded = decode(reads, sizes, true);
    benchmark::DoNotOptimize(decoded);
  }
}
BENCHMARK(BM_PcDecode);

void BM_Unrank(benchmark::State& state) {
  const DerivedSizes sizes = derive(kAnchor);  // n_eff 36, s = w = 6
  const BigInt total = codebook_size(sizes);
  auto eng = make_engine({3, 0});
  for (auto _ : state) {
    const PartitionMessage msg = unrank(uniform_below_big(eng, total), sizes);
    benchmark::DoNotOptimize(msg.assignment.data());
  }
}
BENCHMARK(BM_Unrank);

void BM_PcTrialEndToEnd(benchmark::State& state) {
  ExperimentSpec spec;
  spec.params = kAnchor;
  spec.scheme = Scheme::partition;
  spec.trials = 256;
  spec.master_seed = 99;
  for (auto _ : state) {
    const ExperimentResult r = run_pc_experiment(spec);
    benchmark::DoNotOptimize(r.errors);
  }
  state.SetItemsProcessed(state.iterations() * spec.trials);
}
BENCHMARK(BM_PcTrialEndToEnd)->Unit(benchmark::kMillisecond);

void BM_MlDecode(benchmark::State& state) {
  const std::int64_t size = state.range(0);
  const std::int64_t n = 64;
  const Codebook book = generate_codebook(size, n, 100000, {7, 0});
  const ReadCounts reads = sample_reads(book.codewords[0].counts, 100000, RngStream{8, 0});
  for (auto _ : state) {
    const MlDecision d = ml_decode(reads, book);
    benchmark::DoNotOptimize(d.index);
  }
}
BENCHMARK(BM_MlDecode)->Arg(16)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
