#include <benchmark/benchmark.h>

#include "fpme/spectral.hpp"
#include "fpme/stepper.hpp"

using namespace fpme;

namespace {

State bump_state(const Grid& grid) {
  InitialData init;
  init.u0 = GaussianBump{1.0, grid.length() / 10.0, {}};
  init.p0 = ZeroInit{};
  return make_initial(init, grid);
}

Grid grid_for_args(const benchmark::State& st) {
  return make_grid(static_cast<int>(st.range(0)),
                   static_cast<int>(st.range(1)), 20.0);
}

void BM_FracLaplacian(benchmark::State& st) {
  const Grid grid = grid_for_args(st);
  const State state = bump_state(grid);
  for (auto _ : st)
    benchmark::DoNotOptimize(spectral::frac_laplacian(state.u, 0.75));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(grid.size()));
}

void BM_Gradient(benchmark::State& st) {
  const Grid grid = grid_for_args(st);
  const State state = bump_state(grid);
  for (auto _ : st) benchmark::DoNotOptimize(spectral::gradient(state.p));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(grid.size()));
}

void BM_PressureStep(benchmark::State& st) {
  const Grid grid = grid_for_args(st);
  const State state = bump_state(grid);
  for (auto _ : st)
    benchmark::DoNotOptimize(pressure_step(state.p, state.u, 0.75, 1e-3));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(grid.size()));
}

void BM_TransportStep(benchmark::State& st) {
  const Grid grid = grid_for_args(st);
  State state = bump_state(grid);
  state.p = state.u;  // nontrivial velocity
  const double dt = 0.1 * cfl_dt(state.u, state.p, 1.0);
  for (auto _ : st)
    benchmark::DoNotOptimize(transport_step(state.u, state.p, dt));
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(grid.size()));
}

void BM_FullStep(benchmark::State& st) {
  const Grid grid = grid_for_args(st);
  Params params;
  params.grid = grid;
  params.s = 0.75;
  params.t_end = 1e9;
  params.dt_max = 1e-3;
  State state = bump_state(grid);
  StepperConfig config;
  for (auto _ : st) {
    state = step(state, params, config);
    benchmark::DoNotOptimize(state.u.values.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(grid.size()));
}

}  // namespace

BENCHMARK(BM_FracLaplacian)->Args({2, 128})->Args({3, 64});
BENCHMARK(BM_Gradient)->Args({2, 128})->Args({3, 64});
BENCHMARK(BM_PressureStep)->Args({2, 128})->Args({3, 64});
BENCHMARK(BM_TransportStep)->Args({2, 128})->Args({3, 64});
BENCHMARK(BM_FullStep)->Args({2, 128})->Args({3, 64});

BENCHMARK_MAIN();
