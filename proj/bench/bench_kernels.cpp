// Serial reference vs OpenMP kernels on a 16-event random poset.

#include <benchmark/benchmark.h>

#include <random>

#include "cbn/genotype_model.hpp"
#include "cbn/kernels.hpp"
#include "cbn/selection.hpp"

using namespace cbn;

namespace {

Poset bench_poset(int n) {
  std::mt19937_64 rng(17);
  std::bernoulli_distribution coin(0.15);
  std::vector<Relation> rel;
  for (int e = 0; e < n; ++e)
    for (int f = e + 1; f < n; ++f)
      if (coin(rng)) rel.push_back({e, f});
  return Poset::from_relations(n, rel);
}

const CbnModel& model() {
  static const CbnModel m = [] {
    const int n = 16;
    std::vector<double> theta;
    for (int e = 0; e < n; ++e) theta.push_back(0.3 + 0.4 * e / n);
    return CbnModel(bench_poset(n), theta);
  }();
  return m;
}

const GenotypeLattice& lattice() {
  static const GenotypeLattice l = enumerate_order_ideals(model().poset());
  return l;
}

void BM_Probabilities(benchmark::State& state) {
  const auto ideals = lattice().ideals();
  std::vector<double> out(ideals.size());
  for (auto _ : state) {
    if (state.range(0))
      kernels::probabilities_parallel(model(), ideals, out);
    else
      kernels::probabilities_serial(model(), ideals, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["genotypes"] = static_cast<double>(ideals.size());
}
BENCHMARK(BM_Probabilities)->ArgName("parallel")->Arg(0)->Arg(1);

void BM_Sample(benchmark::State& state) {
  for (auto _ : state) {
    auto r = state.range(0) ? kernels::sample_parallel(model(), 1 << 21, 5) : kernels::sample_serial(model(), 1 << 21, 5);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_Sample)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SupersetSum(benchmark::State& state) {
  const auto plan = kernels::make_sweep_plan(lattice());
  const auto p = distribution(model(), lattice());
  std::vector<double> q(p.size());
  for (auto _ : state) {
    q = p;
    kernels::superset_sum_sweep<double>(plan, q, state.range(0) != 0);
    benchmark::DoNotOptimize(q.data());
  }
}
BENCHMARK(BM_SupersetSum)->ArgName("parallel")->Arg(0)->Arg(1);

// Quadratic definition, on a smaller lattice.
void BM_SupersetSumReference(benchmark::State& state) {
  const auto small = enumerate_order_ideals(bench_poset(11));
  std::vector<double> p(small.size(), 1.0), q(small.size());
  for (auto _ : state) {
    kernels::superset_sum_reference<double>(small, p, q);
    benchmark::DoNotOptimize(q.data());
  }
  state.counters["genotypes"] = static_cast<double>(small.size());
}
BENCHMARK(BM_SupersetSumReference)->Unit(benchmark::kMillisecond);

void BM_ViolationMass(benchmark::State& state) {
  const auto u = sample(model(), 1 << 20, 11);
  const auto support = u.support();
  std::vector<double> counts;
  for (auto g : support) counts.push_back(u.count(g));
  for (auto _ : state) {
    auto m = state.range(0) ? kernels::violation_mass_parallel(16, support, counts)
                            : kernels::violation_mass_serial(16, support, counts);
    benchmark::DoNotOptimize(m.data());
  }
  state.counters["support"] = static_cast<double>(support.size());
}
BENCHMARK(BM_ViolationMass)->ArgName("parallel")->Arg(0)->Arg(1);

void BM_Bootstrap(benchmark::State& state) {
  const auto u = sample(model(), 5000, 13);
  for (auto _ : state) {
    auto r = state.range(0) ? bootstrap_replicates_parallel(u, model().poset(), 100, 1)
                            : bootstrap_replicates_serial(u, model().poset(), 100, 1);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_Bootstrap)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
