#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "claimgraph/attention.hpp"
#include "claimgraph/pipeline.hpp"
#include "claimgraph/stats.hpp"
#include "claimgraph/synthetic.hpp"
#include "claimgraph/tokenizer.hpp"

using namespace claimgraph;

namespace {

Patent make_patent(int claims) {
  std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(claims));
  return synthetic_patent(rng, "BM", {.min_claims = claims, .max_claims = claims});
}

void BM_build_cdg(benchmark::State& state) {
  const Patent patent = make_patent(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ClaimDependencyGraph cdg = build_cdg(patent);
    benchmark::DoNotOptimize(cdg);
  }
}
BENCHMARK(BM_build_cdg)->Arg(5)->Arg(17)->Arg(40);

void BM_mask_and_bias(benchmark::State& state) {
  const Patent patent = make_patent(17);
  const ClaimDependencyGraph cdg = build_cdg(patent);
  const AdjacencySet adj = build_adjacency(cdg);
  const BiasParams params = BiasParams::zero_init(1);

  // Fixed claim structure, token count scaled by the benchmark argument so
  // the quadratic cost in L is visible directly.
  TokenClaimMap map;
  map.n_claims = cdg.n;
  map.phi.push_back(TokenClaimMap::kSentinel);
  const auto tokens_per_claim = static_cast<std::size_t>(state.range(0));
  for (int claim = 1; claim <= cdg.n; ++claim) {
    for (std::size_t t = 0; t < tokens_per_claim; ++t) map.phi.push_back(claim);
  }
  map.real_len = map.phi.size();

  for (auto _ : state) {
    MaskMatrix mask = build_connectivity_mask(adj, map);
    BiasMatrix bias = build_relation_bias(adj, map, params, 0);
    benchmark::DoNotOptimize(mask);
    benchmark::DoNotOptimize(bias);
  }
  state.SetComplexityN(static_cast<std::int64_t>(map.phi.size()));
}
BENCHMARK(BM_mask_and_bias)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Complexity(benchmark::oNSquared);

void BM_attention(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1234);
  Matrix logits(length, length);
  for (std::size_t u = 0; u < length; ++u) {
    for (std::size_t v = 0; v < length; ++v) logits(u, v) = canonical_double(rng) * 4.0 - 2.0;
  }
  MaskMatrix mask(length);
  for (std::size_t u = 1; u < length; ++u) {
    for (std::size_t v = 1; v < length; ++v) {
      if (canonical_double(rng) < 0.6) mask.set_masked(u, v);
    }
  }
  for (auto _ : state) {
    Matrix attn = masked_biased_attention(logits, mask);
    benchmark::DoNotOptimize(attn);
  }
}
BENCHMARK(BM_attention)->Arg(128)->Arg(256)->Arg(512);

void BM_corpus_stats(benchmark::State& state) {
  std::mt19937_64 rng(5678);
  std::vector<ClaimDependencyGraph> graphs;
  for (int i = 0; i < 200; ++i) {
    graphs.push_back(build_cdg(synthetic_patent(rng, "S", {.min_claims = 10, .max_claims = 20})));
  }
  for (auto _ : state) {
    StatsAccumulator acc;
    for (const auto& g : graphs) acc.add(patent_stats(g));
    CorpusReport report = acc.report();
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_corpus_stats);

}  // namespace

BENCHMARK_MAIN();
