#include <benchmark/benchmark.h>

#include <random>

#include "gsvdlink/channel.hpp"
#include "gsvdlink/gsvd.hpp"
#include "gsvdlink/sim.hpp"
#include "gsvdlink/transceiver.hpp"

using namespace gsvdlink;

namespace {

MatrixXc random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXc m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

PathProfile bench_profile() {
  PathProfile p;
  p.tap_delays = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  p.tap_powers_db = {0, -1.5, -1.4, -3.6, -0.6, -9.1, -7, -12, -16.9};
  p.max_speed_kmh = 500;
  return p;
}

void bm_gsvd(benchmark::State& state) {
  const Index m = state.range(0);
  const Index n = state.range(1);
  std::mt19937_64 rng(1);
  MatrixXc h1 = random_matrix(m, n, rng);
  MatrixXc h2 = random_matrix(m, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gsvd(h1, h2));
  }
}
BENCHMARK(bm_gsvd)->Args({24, 32})->Args({96, 128})->Args({384, 512})
    ->Unit(benchmark::kMillisecond);

void bm_dd_channel_matrix(benchmark::State& state) {
  FrameParams p(16, 8, 15e3, 4e9);
  std::mt19937_64 rng(2);
  PathRealization r = draw_channel_realization(bench_profile(), p, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dd_channel_matrix(r, p));
  }
}
BENCHMARK(bm_dd_channel_matrix)->Unit(benchmark::kMillisecond);

void bm_simulate_frame(benchmark::State& state) {
  FrameParams p(8, 4, 15e3, 4e9);
  const Index mn = p.grid_size();
  std::mt19937_64 rng(3);
  MatrixXc h1 = random_matrix(mn * 3, mn * 4, rng);
  MatrixXc h2 = random_matrix(mn * 3, mn * 4, rng);
  TransceiverPlan plan = build_gsvd_plan(h1, h2, 4, 3, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_frame(plan, h1, h2, 0.1, rng));
  }
}
BENCHMARK(bm_simulate_frame)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
