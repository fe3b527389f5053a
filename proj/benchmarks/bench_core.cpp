#include <benchmark/benchmark.h>

#include "nlsv/evolve.hpp"
#include "nlsv/groundstate.hpp"
#include "nlsv/modulation.hpp"
#include "nlsv/virial.hpp"

namespace {

nlsv::GroundState make_gs(std::size_t points) {
  const auto params = nlsv::make_params(1, 7.0);
  const nlsv::Grid grid(1, 20.0, points);
  return nlsv::solve_ground_state(params, grid);
}

void SplitStep1D(benchmark::State& state) {
  const auto gs = make_gs(static_cast<std::size_t>(state.range(0)));
  nlsv::Field u = gs.profile;
  for (auto _ : state) {
    u = nlsv::step(u, 1e-3);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SplitStep1D)->RangeMultiplier(4)->Range(512, 8192);

void GroundStateSolve1D(benchmark::State& state) {
  const auto params = nlsv::make_params(1, 7.0);
  const nlsv::Grid grid(1, 20.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto gs = nlsv::solve_ground_state(params, grid);
    benchmark::DoNotOptimize(gs.residual);
  }
}
BENCHMARK(GroundStateSolve1D)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void LocalVirial1D(benchmark::State& state) {
  const auto gs = make_gs(static_cast<std::size_t>(state.range(0)));
  const auto cut = nlsv::make_cutoff(gs.profile.grid, 8.0);
  for (auto _ : state) {
    auto lv = nlsv::local_virial(gs.profile, cut);
    benchmark::DoNotOptimize(lv.A_R);
  }
}
BENCHMARK(LocalVirial1D)->Arg(512)->Arg(4096);

void ModulationFit1D(benchmark::State& state) {
  const auto gs = make_gs(static_cast<std::size_t>(state.range(0)));
  nlsv::Field u = gs.profile;
  for (auto& v : u.values) v *= std::polar(1.0, 0.7);
  for (auto _ : state) {
    auto fit_result = nlsv::fit(u, gs, 1.0);
    benchmark::DoNotOptimize(fit_result.dist_l2);
  }
}
BENCHMARK(ModulationFit1D)->Arg(512)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
