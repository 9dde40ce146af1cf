#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "readoutsim/readoutsim.hpp"

namespace {

constexpr double kCarrier = 7.252534e9;

readout::ChainConfig reference_chain() {
    return readout::ChainConfig::typical_lab_chain(
        readout::DispersivePair::analytic(7.252456e9, 7.252612e9, 48000.0,
                                          0.73),
        kCarrier);
}

readout::PulseSpec reference_pulse() {
    return readout::PulseSpec{kCarrier, 3.5e-6, -47.0};
}

void bm_fft_forward(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    readout::ComplexEnvelope envelope{readout::SimGrid(3.5e-6, n, 4.0),
                                      kCarrier, {}};
    envelope.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        envelope.samples[i] = {static_cast<double>(i % 17),
                               static_cast<double>(i % 5)};
    }
    for (auto _ : state) {
        auto spectrum = readout::fft_forward(envelope);
        benchmark::DoNotOptimize(spectrum.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(bm_fft_forward)->Arg(1024)->Arg(4096)->Arg(16384);

void bm_noise_spectrum(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const readout::SimGrid grid(3.5e-6, n, 4.0);
    readout::RandomStream rng(42);
    for (auto _ : state) {
        auto spectrum =
            readout::sample_noise_spectrum(grid, kCarrier, 7.35e-13, rng);
        benchmark::DoNotOptimize(spectrum.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(bm_noise_spectrum)->Arg(1024)->Arg(4096);

void bm_propagate(benchmark::State& state) {
    const auto chain = reference_chain();
    const readout::SimGrid grid(3.5e-6, 4096, 4.0);
    const auto spec = reference_pulse();
    for (auto _ : state) {
        auto spectrum = readout::propagate(chain, grid, spec, 0);
        benchmark::DoNotOptimize(spectrum.samples.data());
    }
}
BENCHMARK(bm_propagate);

void bm_simulate_trial(benchmark::State& state) {
    const auto chain = reference_chain();
    const readout::SimGrid grid(3.5e-6, 4096, 4.0);
    const auto spec = reference_pulse();
    std::uint64_t trial = 0;
    for (auto _ : state) {
        readout::RandomStream rng = readout::derive_stream(1, 0, trial++);
        benchmark::DoNotOptimize(
            readout::simulate_trial(chain, grid, spec, 0, rng));
    }
}
BENCHMARK(bm_simulate_trial);

void bm_run_ensemble(benchmark::State& state) {
    const auto chain = reference_chain();
    const readout::SimGrid grid(3.5e-6, 4096, 4.0);
    const auto spec = reference_pulse();
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto ens = readout::run_ensemble(chain, grid, spec, trials, 7, 1);
        benchmark::DoNotOptimize(ens.state0.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(2 * trials));
}
BENCHMARK(bm_run_ensemble)->Arg(100)->Unit(benchmark::kMillisecond);

void bm_blob_stats(benchmark::State& state) {
    readout::IQEnsemble ens;
    const std::size_t n = 10000;
    ens.n_trials = n;
    readout::RandomStream rng(3);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a, b] = rng.next_normal_pair();
        ens.state0.emplace_back(a - 2.0, b);
        const auto [c, d] = rng.next_normal_pair();
        ens.state1.emplace_back(c + 2.0, d);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(readout::blob_stats(ens));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2 * n));
}
BENCHMARK(bm_blob_stats);

void bm_calibrate(benchmark::State& state) {
    const auto chain = reference_chain();
    const readout::CalibrationPoint point{reference_pulse(), std::nullopt,
                                          1e-3};
    const readout::GridParams grid{1024, 4.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(readout::calibrate_b(chain, point, grid));
    }
}
BENCHMARK(bm_calibrate);

}  // namespace

BENCHMARK_MAIN();
