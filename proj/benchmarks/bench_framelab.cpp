#include <benchmark/benchmark.h>

#include <numbers>

#include "framelab/extended_affine.hpp"
#include "framelab/numerics.hpp"
#include "framelab/piecewise.hpp"
#include "framelab/weyl_heisenberg.hpp"

namespace {

using namespace framelab;

piecewise_window ramp_window() {
  return make_window("ramp", {{0.0, 1.0, polynomial({1.0, 1.0})},
                              {1.0, 2.0, polynomial({0.0, 1.0})}});
}

gabor_system ramp_system() {
  return make_gabor_system({1.0, 0.0}, {{ramp_window(), 1.0, std::numbers::pi}});
}

void bm_frame_sum(benchmark::State& state) {
  const grid g = default_grid();
  const gabor_system sys = ramp_system();
  const grid_signal f = random_test_signals(g, 1, 7, signal_kind::compact)[0];
  const lattice_truncation t{static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(frame_sum(sys, f, t));
}
BENCHMARK(bm_frame_sum)->Arg(16)->Arg(64);

void bm_wavelet_frame_sum(benchmark::State& state) {
  const grid g = default_grid();
  const contraction_spec s =
      make_contraction_spec(ramp_system(), 0.5, 1.0, -1.0, 1.0, 4.0, 16.0);
  const grid_signal f = random_test_signals(g, 1, 7, signal_kind::compact)[0];
  const lattice_truncation t{static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(wavelet_frame_sum(s, f, t));
}
BENCHMARK(bm_wavelet_frame_sum)->Arg(16)->Arg(64);

void bm_christensen_bounds(benchmark::State& state) {
  const piecewise_window w = ramp_window();
  for (auto _ : state)
    benchmark::DoNotOptimize(christensen_bounds(w, 1.0, 0.5, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_christensen_bounds)->Arg(256)->Arg(4096);

void bm_fourier_transform(benchmark::State& state) {
  const grid g = default_grid();
  const grid_signal f = random_test_signals(g, 1, 7, signal_kind::bandlimited)[0];
  for (auto _ : state) benchmark::DoNotOptimize(fourier_transform(f));
}
BENCHMARK(bm_fourier_transform);

void bm_u_epsilon(benchmark::State& state) {
  const grid g = default_grid();
  const grid_signal f = random_test_signals(g, 1, 7, signal_kind::hardy)[0];
  for (auto _ : state) benchmark::DoNotOptimize(u_epsilon(f, 0.5));
}
BENCHMARK(bm_u_epsilon);

}  // namespace

BENCHMARK_MAIN();
