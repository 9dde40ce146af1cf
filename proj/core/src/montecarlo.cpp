#include "readoutsim/montecarlo.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "readoutsim/errors.hpp"

namespace readout {

const std::vector<std::complex<double>>& IQEnsemble::samples(int state) const {
    if (state != 0 && state != 1) {
        throw InvalidArgument("qubit state must be 0 or 1, got " +
                              std::to_string(state));
    }
    return state == 0 ? state0 : state1;
}

std::complex<double> simulate_trial(const ChainConfig& cfg, const SimGrid& grid,
                                    const PulseSpec& spec, int state,
                                    RandomStream& trial_rng) {
    const Spectrum noiseless = propagate(cfg, grid, spec, state);
    const double bin_variance = measurement_bin_variance(cfg, spec);
    const Spectrum noise = sample_noise_spectrum(grid, spec.carrier_freq_hz,
                                                 bin_variance, trial_rng);
    return spectrum_at(noise, spec.carrier_freq_hz) +
           spectrum_at(noiseless, spec.carrier_freq_hz);
}

IQEnsemble run_ensemble(const ChainConfig& cfg, const SimGrid& grid,
                        const PulseSpec& spec, std::size_t n_trials,
                        std::uint64_t seed, unsigned n_workers) {
    if (n_trials < 2) {
        throw InvalidArgument("an ensemble needs at least 2 trials, got " +
                              std::to_string(n_trials));
    }
    // The noiseless part is the same for every trial of a state; compute the
    // two bin values once. Adding the per-trial noise bin afterwards gives
    // bit-identical results to simulate_trial, which adds the same two
    // numbers.
    const std::complex<double> clean[2] = {
        spectrum_at(propagate(cfg, grid, spec, 0), spec.carrier_freq_hz),
        spectrum_at(propagate(cfg, grid, spec, 1), spec.carrier_freq_hz),
    };
    const double bin_variance = measurement_bin_variance(cfg, spec);

    IQEnsemble ensemble;
    ensemble.state0.resize(n_trials);
    ensemble.state1.resize(n_trials);
    ensemble.n_trials = n_trials;
    ensemble.seed = seed;
    ensemble.params = {spec, grid.size(), grid.padding()};

    // Flat job index: states 0 and 1 back to back. Every job writes its own
    // slot, so scheduling cannot affect the result.
    const std::size_t total = 2 * n_trials;
    const auto run_jobs = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const int state = j < n_trials ? 0 : 1;
            const std::size_t trial = state == 0 ? j : j - n_trials;
            RandomStream rng = derive_stream(
                seed, static_cast<std::uint64_t>(state), trial);
            const Spectrum noise = sample_noise_spectrum(
                grid, spec.carrier_freq_hz, bin_variance, rng);
            const std::complex<double> sample =
                spectrum_at(noise, spec.carrier_freq_hz) + clean[state];
            (state == 0 ? ensemble.state0 : ensemble.state1)[trial] = sample;
        }
    };

    unsigned workers = n_workers != 0 ? n_workers
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        run_jobs(0, total);
        return ensemble;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = total / workers;
    const std::size_t extra = total % workers;
    std::size_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t count = base + (w < extra ? 1 : 0);
        pool.emplace_back(run_jobs, begin, begin + count);
        begin += count;
    }
    for (std::thread& t : pool) t.join();
    return ensemble;
}

}  // namespace readout
