#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "readoutsim/chain.hpp"

namespace readout {

// Everything besides the chain and seed needed to regenerate an ensemble.
struct EnsembleParams {
    PulseSpec pulse;
    std::size_t grid_n = 0;
    double grid_padding = 0.0;
};

// Monte Carlo I-Q samples of the readout bin, one complex voltage per trial
// per qubit state, plus the inputs that produced them.
struct IQEnsemble {
    std::vector<std::complex<double>> state0;
    std::vector<std::complex<double>> state1;
    std::size_t n_trials = 0;
    std::uint64_t seed = 0;
    EnsembleParams params;

    const std::vector<std::complex<double>>& samples(int state) const;
};

// One simulated measurement: the noiseless propagated spectrum plus a fresh
// noise draw, read at the carrier bin. With zero noise this is exactly the
// noiseless bin value.
std::complex<double> simulate_trial(const ChainConfig& cfg, const SimGrid& grid,
                                    const PulseSpec& spec, int state,
                                    RandomStream& trial_rng);

// n_trials measurements per qubit state. Trial i of state s uses the stream
// derive_stream(seed, s, i), so every sample is a pure function of
// (seed, state, index): re-running with any worker count, or slicing the
// work differently, produces byte-identical ensembles. n_workers = 0 means
// use the hardware concurrency.
IQEnsemble run_ensemble(const ChainConfig& cfg, const SimGrid& grid,
                        const PulseSpec& spec, std::size_t n_trials,
                        std::uint64_t seed, unsigned n_workers = 0);

}  // namespace readout
