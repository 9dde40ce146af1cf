#include "readoutsim/montecarlo.hpp"

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "readoutsim/errors.hpp"

namespace readout {
namespace {

constexpr double kCarrier = 7.252534e9;

DispersivePair reference_pair() {
    return DispersivePair::analytic(7.252456e9, 7.252612e9, 48000.0, 0.73);
}

ChainConfig reference_chain() {
    return ChainConfig::typical_lab_chain(reference_pair(), kCarrier);
}

ChainConfig noiseless_chain() {
    return ChainConfig(76.0, reference_pair(), {}, {});
}

PulseSpec reference_pulse() {
    return PulseSpec{kCarrier, 3.5e-6, -47.0};
}

void expect_identical(const IQEnsemble& a, const IQEnsemble& b) {
    ASSERT_EQ(a.state0.size(), b.state0.size());
    ASSERT_EQ(a.state1.size(), b.state1.size());
    for (std::size_t i = 0; i < a.state0.size(); ++i) {
        EXPECT_EQ(a.state0[i], b.state0[i]) << "state 0 trial " << i;
        EXPECT_EQ(a.state1[i], b.state1[i]) << "state 1 trial " << i;
    }
}

TEST(RunEnsemble, CarriesItsInputsInTheResult) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto ens =
        run_ensemble(reference_chain(), grid, reference_pulse(), 37, 123, 1);
    EXPECT_EQ(ens.n_trials, 37u);
    EXPECT_EQ(ens.seed, 123u);
    EXPECT_EQ(ens.state0.size(), 37u);
    EXPECT_EQ(ens.state1.size(), 37u);
    EXPECT_EQ(ens.params.grid_n, 256u);
    EXPECT_DOUBLE_EQ(ens.params.grid_padding, 4.0);
    EXPECT_DOUBLE_EQ(ens.params.pulse.width_s, 3.5e-6);
}

TEST(RunEnsemble, SamplesAccessorSelectsTheState) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto ens =
        run_ensemble(reference_chain(), grid, reference_pulse(), 5, 1, 1);
    EXPECT_EQ(&ens.samples(0), &ens.state0);
    EXPECT_EQ(&ens.samples(1), &ens.state1);
    EXPECT_THROW(ens.samples(2), InvalidArgument);
    EXPECT_THROW(ens.samples(-1), InvalidArgument);
}

TEST(RunEnsemble, RequiresAtLeastTwoTrials) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    EXPECT_THROW(
        run_ensemble(reference_chain(), grid, reference_pulse(), 1, 1, 1),
        InvalidArgument);
    EXPECT_THROW(
        run_ensemble(reference_chain(), grid, reference_pulse(), 0, 1, 1),
        InvalidArgument);
}

TEST(RunEnsemble, RerunningWithTheSameSeedIsByteIdentical) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto a =
        run_ensemble(reference_chain(), grid, reference_pulse(), 64, 12345, 1);
    const auto b =
        run_ensemble(reference_chain(), grid, reference_pulse(), 64, 12345, 1);
    expect_identical(a, b);
    // A different seed changes every trial.
    const auto c =
        run_ensemble(reference_chain(), grid, reference_pulse(), 64, 12346, 1);
    EXPECT_NE(a.state0[0], c.state0[0]);
}

TEST(RunEnsemble, WorkerCountNeverChangesTheResult) {
    // 37 trials do not divide evenly into 2, 3, or 5 chunks; the samples
    // must still match the single-threaded run bit for bit.
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const auto serial = run_ensemble(chain, grid, spec, 37, 777, 1);
    for (unsigned workers : {2u, 3u, 5u, 16u}) {
        const auto parallel = run_ensemble(chain, grid, spec, 37, 777, workers);
        expect_identical(serial, parallel);
    }
    // Worker count 0 (auto) must agree as well.
    const auto auto_workers = run_ensemble(chain, grid, spec, 37, 777, 0);
    expect_identical(serial, auto_workers);
}

TEST(RunEnsemble, EachTrialMatchesSimulateTrialWithItsDerivedStream) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const std::uint64_t seed = 2026;
    const auto ens = run_ensemble(chain, grid, spec, 11, seed, 3);
    for (int state : {0, 1}) {
        for (std::size_t i : {std::size_t{0}, std::size_t{7}, std::size_t{10}}) {
            RandomStream rng = derive_stream(
                seed, static_cast<std::uint64_t>(state), i);
            const auto direct = simulate_trial(chain, grid, spec, state, rng);
            EXPECT_EQ(ens.samples(state)[i], direct)
                << "state " << state << " trial " << i;
        }
    }
}

TEST(SimulateTrial, ZeroNoiseReproducesTheCleanBinExactly) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = noiseless_chain();
    const auto spec = reference_pulse();
    const auto clean0 = spectrum_at(propagate(chain, grid, spec, 0), kCarrier);
    const auto clean1 = spectrum_at(propagate(chain, grid, spec, 1), kCarrier);
    const auto ens = run_ensemble(chain, grid, spec, 8, 42, 2);
    for (std::size_t i = 0; i < ens.n_trials; ++i) {
        EXPECT_EQ(ens.state0[i], clean0);
        EXPECT_EQ(ens.state1[i], clean1);
    }
    EXPECT_NE(clean0, clean1);
}

TEST(RunEnsemble, BlobMeansConvergeToTheCleanBins) {
    // With 10000 trials the mean of each quadrature sits within
    // 5 sigma / sqrt(n) of the noiseless bin (probability ~1 - 1e-6).
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const std::size_t n = 10000;
    const double sigma = measurement_noise_sigma(chain, spec);
    const double bound = 5.0 * sigma / std::sqrt(static_cast<double>(n));
    const auto ens = run_ensemble(chain, grid, spec, n, 31415, 0);
    for (int state : {0, 1}) {
        const auto clean =
            spectrum_at(propagate(chain, grid, spec, state), kCarrier);
        std::complex<double> mean = 0.0;
        for (const auto& v : ens.samples(state)) mean += v;
        mean /= static_cast<double>(n);
        EXPECT_NEAR(mean.real(), clean.real(), bound) << "state " << state;
        EXPECT_NEAR(mean.imag(), clean.imag(), bound) << "state " << state;
    }
}

TEST(RunEnsemble, BlobVarianceMatchesTheMeasurementBinVariance) {
    // 20000 trials per state pin the complex variance to ~0.7% (1 sigma).
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const std::size_t n = 20000;
    const double expected = measurement_bin_variance(chain, spec);
    const auto ens = run_ensemble(chain, grid, spec, n, 271828, 0);
    for (int state : {0, 1}) {
        const auto clean =
            spectrum_at(propagate(chain, grid, spec, state), kCarrier);
        double var = 0.0;
        for (const auto& v : ens.samples(state)) var += std::norm(v - clean);
        var /= static_cast<double>(n);
        EXPECT_NEAR(var, expected, 0.05 * expected) << "state " << state;
    }
}

TEST(RunEnsemble, NoSampleStraysBeyondSixSigmaPerQuadrature) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const double sigma = measurement_noise_sigma(chain, spec);
    const auto ens = run_ensemble(chain, grid, spec, 1000, 999, 0);
    for (int state : {0, 1}) {
        const auto clean =
            spectrum_at(propagate(chain, grid, spec, state), kCarrier);
        for (const auto& v : ens.samples(state)) {
            EXPECT_LT(std::abs(v.real() - clean.real()), 6.0 * sigma);
            EXPECT_LT(std::abs(v.imag() - clean.imag()), 6.0 * sigma);
        }
    }
}

}  // namespace
}  // namespace readout
