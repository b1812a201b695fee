#include <benchmark/benchmark.h>

#include "qkdwdm/modulation.hpp"
#include "qkdwdm/pulse.hpp"
#include "qkdwdm/scenario.hpp"
#include "qkdwdm/sweep.hpp"

using namespace qkdwdm;

namespace {

LinkScenario reference_scenario() {
    LinkScenario s;
    s.name = "bench";
    s.fiber = *find_profile("ex2000");
    s.pulse = {0.05, 0.5, 0.0};
    s.classical.enabled = true;
    s.classical.format = ModulationFormat::PmBpsk;
    s.classical.rx_sensitivity_dbm = -50.0;
    s.noise.delta_lambda_nm = 0.6;
    s.detector = {DetectorKind::Apd, 0.19, 1e-5, 5e-7, 0.008, 2, 0.5};
    s.protocol = {Protocol::Cow, 0.997, 1.2, MuPolicy::Fixed, 0.5};
    s.frep = {FrepConfig::Mode::Fixed, 1.0, 10.0, 0.001};
    s.duty = {DutyConfig::Mode::Constant, 0.71, 10.0};
    s.sweep = {5.0, 250.0, 5.0};
    return s;
}

void BM_EvaluatePoint(benchmark::State& state) {
    const LinkScenario s = reference_scenario();
    double l = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_point(s, l));
        l = l < 250.0 ? l + 1.0 : 5.0;
    }
}
BENCHMARK(BM_EvaluatePoint);

void BM_FullSweep(benchmark::State& state) {
    const LinkScenario s = reference_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s));
    state.SetItemsProcessed(state.iterations() * sweep_grid(s.sweep).size());
}
BENCHMARK(BM_FullSweep);

void BM_MaxBitrate(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(max_quantum_bitrate(4.25, 1550.0, 300.0, 0.001));
}
BENCHMARK(BM_MaxBitrate);

void BM_ReceiverSensitivity(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(receiver_sensitivity_dbm(ModulationFormat::Pm16Qam,
                                                          FecThreshold::sd(), kMeasuredPenalty, 10.0));
}
BENCHMARK(BM_ReceiverSensitivity);

void BM_MuOptimization(benchmark::State& state) {
    LinkScenario s = reference_scenario();
    s.protocol.mu_policy = MuPolicy::Optimized;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(s, 120.0));
}
BENCHMARK(BM_MuOptimization);

}  // namespace

BENCHMARK_MAIN();
