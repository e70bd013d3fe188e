#include <benchmark/benchmark.h>

#include "cournot/cournot.hpp"

using namespace cournot;

namespace {

MarketParams reference(double alpha) {
  return MarketParams::from_intercepts(2.0, 2.5, 1.0, 0.4, alpha, 4);
}

void BM_Step(benchmark::State& state) {
  const MarketParams p = reference(1.5);
  const DelayConfig d{2, 4, 8};
  const HistoryState h = perturbed_equilibrium_history(p, d, 1e-2);
  OutputVector out(p.n + 1);
  for (auto _ : state) {
    step_into(h, p, d, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Step);

void BM_Simulate(benchmark::State& state) {
  const MarketParams p = reference(1.5);
  const DelayConfig d{5, 3, 3};
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Trajectory t = simulate(p, d, perturbed_equilibrium_history(p, d, 1e-2), steps);
    benchmark::DoNotOptimize(t.points.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(20000);

void BM_PolyRoots(benchmark::State& state) {
  const int lag = static_cast<int>(state.range(0));
  const MarketParams p = reference(1.2);
  const CharPoly cp = full_char_poly(p, DelayConfig{lag, lag, lag}, EquilibriumChoice::Positive);
  for (auto _ : state) {
    SpectrumReport s = poly_roots(cp);
    benchmark::DoNotOptimize(s.max_modulus);
  }
  state.counters["degree"] = cp.degree();
}
BENCHMARK(BM_PolyRoots)->Arg(0)->Arg(4)->Arg(12);

void BM_CriticalAlpha(benchmark::State& state) {
  const MarketParams p = reference(1.0);
  for (auto _ : state) {
    BifurcationPoint b = critical_alpha(p, DelayConfig{5, 3, 3}, {1.0, 1.6});
    benchmark::DoNotOptimize(b.alpha);
  }
}
BENCHMARK(BM_CriticalAlpha)->Unit(benchmark::kMillisecond);

void BM_LargestLyapunov(benchmark::State& state) {
  const MarketParams p = reference(1.35);
  const DelayConfig d{3, 5, 5};
  const HistoryState init = perturbed_equilibrium_history(p, d, 1e-2);
  for (auto _ : state) {
    LyapunovEstimate e = largest_lyapunov(p, d, init, 20000, 1000);
    benchmark::DoNotOptimize(e.lle);
  }
}
BENCHMARK(BM_LargestLyapunov)->Unit(benchmark::kMillisecond);

void BM_BifurcationDiagram(benchmark::State& state) {
  SweepSpec spec;
  spec.alpha_count = 36;
  spec.lyapunov.iterations = 5000;
  spec.workers = static_cast<std::size_t>(state.range(0));
  const MarketParams p = reference(1.0);
  for (auto _ : state) {
    auto rows = bifurcation_diagram(p, DelayConfig{2, 2, 10}, spec);
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(BM_BifurcationDiagram)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
