// Serial reference vs OpenMP trial kernel, plus the analytic quadrature.

#include <benchmark/benchmark.h>

#include "mpa/analytic.hpp"
#include "mpa/montecarlo.hpp"
#include "mpa/protocol.hpp"

namespace {

mpa::mc::SimulationConfig make_config(std::int64_t trials, int workers) {
  mpa::mc::SimulationConfig c;
  c.scheme = mpa::make_fixed(2, 2);
  c.settings = mpa::MeasurementSettings(0.0, mpa::kPi / 8.0);
  c.n_trials = static_cast<std::uint64_t>(trials);
  c.seed = 7;
  c.workers = workers;
  return c;
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto cfg = make_config(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpa::mc::run_trials_serial(cfg).counts);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialsSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_TrialsOpenMP(benchmark::State& state) {
  const auto cfg = make_config(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpa::mc::run_trials(cfg).counts);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialsOpenMP)
    ->Args({1 << 20, 1})
    ->Args({1 << 20, 2})
    ->Args({1 << 20, 4})
    ->Args({1 << 20, 0})
    ->Unit(benchmark::kMillisecond);

void BM_ProtocolRounds(benchmark::State& state) {
  mpa::protocol::ProtocolConfig cfg;
  cfg.n_rounds = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpa::protocol::run_protocol(cfg).qber);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProtocolRounds)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_AnalyticChsh(benchmark::State& state) {
  const mpa::AbsorptionOrder m(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpa::analytic::chsh(m, m));
  }
}
BENCHMARK(BM_AnalyticChsh)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
