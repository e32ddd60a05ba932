#include <benchmark/benchmark.h>

#include "pedkin/exact_kinship.hpp"
#include "pedkin/recursive_cut.hpp"
#include "pedkin/sampler.hpp"
#include "pedkin/simulate.hpp"

using namespace pedkin;

namespace {

std::vector<Index> last_generation(const Pedigree& ped, std::uint32_t pairs) {
  std::vector<Index> out;
  for (Index i = static_cast<Index>(ped.size() - 2 * pairs); i < ped.size(); ++i) out.push_back(i);
  return out;
}

void BM_Exact(benchmark::State& state) {
  const auto G = static_cast<std::uint32_t>(state.range(0));
  const auto ped = wright_fisher_pedigree({25, G, 1, false});
  const auto psi = FounderKinship::zero(ped);
  ExactOptions opts;
  opts.check_ancestry = false;
  for (auto _ : state) benchmark::DoNotOptimize(exact_kinship(ped, psi, opts));
  state.counters["n"] = static_cast<double>(ped.size());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(ped.size()));
}
BENCHMARK(BM_Exact)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);

void BM_RecursiveCut(benchmark::State& state) {
  const auto G = static_cast<std::uint32_t>(state.range(0));
  const auto ped = wright_fisher_pedigree({100, G, 3, false});
  const auto interest = last_generation(ped, 100);
  const auto plan = per_generation_plan(ped, interest);
  const auto psi = FounderKinship::zero(ped);
  ExactOptions opts;
  opts.check_ancestry = false;
  for (auto _ : state) benchmark::DoNotOptimize(recursive_cut_kinship(ped, psi, interest, plan, opts));
  state.counters["segments"] = static_cast<double>(plan.segment_count());
  state.SetComplexityN(G);
}
BENCHMARK(BM_RecursiveCut)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_SamplerReplicate(benchmark::State& state) {
  const auto G = static_cast<std::uint32_t>(state.range(0));
  const auto ped = wright_fisher_pedigree({10, G, 2, false});
  const auto interest = last_generation(ped, 10);
  const FounderMerges merges(ped, FounderKinship::zero(ped), MergeRule::unbiased_2psi);
  EstimateAccumulator acc(interest.size());
  SegregationSample seg;
  CCLabels labels;
  std::uint64_t replicate = 0;
  for (auto _ : state) {
    Rng rng = replicate_rng(7, replicate++);
    sample_segregation(ped, rng, seg);
    compute_cc_labels(ped, seg, merges, rng, labels);
    accumulate_replicate(labels, interest, acc);
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(ped.size()));
}
BENCHMARK(BM_SamplerReplicate)->Arg(125)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMicrosecond)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
