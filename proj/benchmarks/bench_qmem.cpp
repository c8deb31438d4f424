#include <benchmark/benchmark.h>

#include "qmem/entanglement.hpp"
#include "qmem/lindblad.hpp"
#include "qmem/meanfield.hpp"
#include "qmem/scenario.hpp"

using namespace qmem;

namespace {

lindblad::SystemSpec coupled_system(std::size_t levels) {
    const auto m = circuit::mode_params_direct({6.16, 6.16}, 0.0, 0.2, {2.14, 2.14});
    std::array<circuit::DriveParams, 2> d{};
    d[0].flux_offset = d[1].flux_offset = kPi / 2;
    return lindblad::make_system(m, lindblad::resolve_drive(d, m), levels);
}

void BM_LindbladRhs(benchmark::State& state) {
    const auto levels = static_cast<std::size_t>(state.range(0));
    const auto sys = coupled_system(levels);
    const auto rho = linalg::product_state(kPi / 4, kPi / 2, kPi / 3, kPi / 2, levels).matrix();
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lindblad::lindblad_rhs(rho, t, sys));
        t += 1e-3;
    }
}
BENCHMARK(BM_LindbladRhs)->Arg(2)->Arg(3);

void BM_Concurrence(benchmark::State& state) {
    const auto sys = coupled_system(2);
    lindblad::IntegrateOptions opts;
    opts.keep_states = true;
    const auto traj = lindblad::integrate(linalg::product_state(kPi / 4, kPi / 2, kPi / 3, kPi / 2),
                                          lindblad::make_grid(0.5, lindblad::default_step(sys.mode)), sys, opts);
    const auto rho = traj.states.back().matrix();
    for (auto _ : state) benchmark::DoNotOptimize(entanglement::concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_Integrate(benchmark::State& state) {
    const auto sys = coupled_system(2);
    const auto rho0 = linalg::product_state(kPi / 4, kPi / 2, kPi / 3, kPi / 2);
    const auto grid = lindblad::make_grid(10.0, lindblad::default_step(sys.mode));
    lindblad::IntegrateOptions opts;
    opts.check_positivity = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(lindblad::integrate(rho0, grid, sys, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.steps));
}
BENCHMARK(BM_Integrate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeanField(benchmark::State& state) {
    const auto sys = coupled_system(2);
    const auto m0 = meanfield::initial_moments({kPi / 4, kPi / 3}, {kPi / 2, kPi / 2}, sys.mode.zero_point);
    const auto grid = lindblad::make_grid(50.0, lindblad::default_step(sys.mode));
    for (auto _ : state) benchmark::DoNotOptimize(meanfield::integrate_meanfield(m0, grid, sys));
}
BENCHMARK(BM_MeanField)->Unit(benchmark::kMillisecond);

void BM_ScenarioRun(benchmark::State& state) {
    const auto config = scenario::parse_config(scenario::preset_json("fig2a"));
    for (auto _ : state) benchmark::DoNotOptimize(scenario::run(config));
}
BENCHMARK(BM_ScenarioRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
