// Serial reference vs OpenMP kernels on the hot paths of a layer.

#include <benchmark/benchmark.h>

#include "falqon/falqon.hpp"
#include "falqon/reference.hpp"
#include "falqon/rng.hpp"

namespace {

using namespace falqon;

struct Fixture {
  Graph graph;
  CutDiagonal cut;
  CostDiagonal cost;
  StateVector state;
};

Fixture make_fixture(int n) {
  Fixture f;
  f.graph = gen_erdos_renyi(n, 0.5, 12345);
  f.cut = build_cut_diagonal(f.graph);
  f.cost = build_cost_diagonal(f.graph);
  f.state = init_plus_state(n);
  // Leave the uniform state: phases make later kernels representative.
  apply_cost_phase(f.state, f.cost, 0.03);
  apply_mixer(f.state, 0.7, 0.03);
  return f;
}

void bm_cost_phase_parallel(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    apply_cost_phase(f.state, f.cost, 0.03);
  }
}

void bm_cost_phase_serial(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ref::apply_cost_phase(f.state, f.cost, 0.03);
  }
}

void bm_mixer_parallel(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    apply_mixer(f.state, 0.7, 0.03);
  }
}

void bm_mixer_serial(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ref::apply_mixer(f.state, 0.7, 0.03);
  }
}

void bm_commutator_parallel(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_commutator(f.state, f.cost));
  }
}

void bm_commutator_serial(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ref::measure_commutator(f.state, f.cost));
  }
}

void bm_expected_cut_parallel(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_cut(f.state, f.cut));
  }
}

void bm_expected_cut_serial(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ref::expected_cut(f.state, f.cut));
  }
}

void bm_brute_force_parallel(benchmark::State& state) {
  const Graph g = gen_erdos_renyi(static_cast<int>(state.range(0)), 0.5, 12345);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_cut_brute_force(g));
  }
}

void bm_brute_force_serial(benchmark::State& state) {
  const Graph g = gen_erdos_renyi(static_cast<int>(state.range(0)), 0.5, 12345);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ref::max_cut_full_scan(g));
  }
}

void bm_full_run(benchmark::State& state) {
  const Graph g = gen_erdos_renyi(static_cast<int>(state.range(0)), 0.5, 12345);
  FalqonConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_falqon(g, cfg));
  }
}

}  // namespace

BENCHMARK(bm_cost_phase_serial)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_cost_phase_parallel)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_mixer_serial)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_mixer_parallel)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_commutator_serial)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_commutator_parallel)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_expected_cut_serial)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_expected_cut_parallel)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_brute_force_serial)->Arg(16)->Arg(20);
BENCHMARK(bm_brute_force_parallel)->Arg(16)->Arg(20);
BENCHMARK(bm_full_run)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
