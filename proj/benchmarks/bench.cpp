#include <benchmark/benchmark.h>

#include <graphlift/catalog.hpp>
#include <graphlift/graph_gen.hpp>
#include <graphlift/lifting.hpp>
#include <graphlift/oracle.hpp>
#include <graphlift/rng.hpp>

using namespace graphlift;

namespace {

const Graph& host_graph() {
  static const Graph g = preferential_attachment(20000, 5, 1);
  return g;
}

void BM_Neighbors(benchmark::State& state) {
  const Graph& g = host_graph();
  QueryCounter counter;
  Rng rng(3);
  for (auto _ : state) {
    const VertexId v = static_cast<VertexId>(rng.below(g.vertex_count()));
    benchmark::DoNotOptimize(neighbors(g, v, counter).data());
  }
}
BENCHMARK(BM_Neighbors);

void BM_LiftSample(benchmark::State& state) {
  const Graph& g = host_graph();
  const int k = static_cast<int>(state.range(0));
  const auto rw = StartDistribution::rw_stationary(g);
  Rng rng(7);
  QueryCounter counter;
  StartSampler sampler(rw, rng, counter);
  for (auto _ : state) {
    LiftState s = sample_sequence(g, k, rw, sampler, rng, counter);
    benchmark::DoNotOptimize(s.probability());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_LiftSample)->Arg(3)->Arg(4)->Arg(5);

void BM_Classify(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Catalog& catalog = Catalog::for_size(k);
  // a pool of random connected masks, classification cost amortized over them
  std::vector<AdjMask> masks;
  Rng rng(11);
  while (masks.size() < 512) {
    const AdjMask m = static_cast<AdjMask>(rng.below(1u << pair_count(k)));
    if (mask_connected(m, k)) masks.push_back(m);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(catalog.classify(masks[i]).type);
    i = (i + 1) % masks.size();
  }
}
BENCHMARK(BM_Classify)->Arg(4)->Arg(5);

void BM_DegreeFnEval(benchmark::State& state) {
  const Graph& g = host_graph();
  const Catalog& catalog = Catalog::for_size(5);
  const auto rw = StartDistribution::rw_stationary(g);
  DegreeProbabilityFunction f(LiftPlan::for_type(catalog.type(catalog.type_count())), rw);
  Rng rng(13);
  std::array<std::uint32_t, kMaxGraphletSize> degs{};
  for (auto _ : state) {
    for (int i = 0; i < 5; ++i) degs[i] = 4 + static_cast<std::uint32_t>(rng.below(16));
    benchmark::DoNotOptimize(f.value({degs.data(), 5}));
  }
}
BENCHMARK(BM_DegreeFnEval);

void BM_ExactCount(benchmark::State& state) {
  const Graph g = erdos_renyi_connected(150, 0.08, 5);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ExactCounts c = exact_count(g, k);
    benchmark::DoNotOptimize(c.total);
  }
}
BENCHMARK(BM_ExactCount)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
