#include "readoutsim/chain.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "readoutsim/errors.hpp"
#include "readoutsim/units.hpp"
#include "test_util.hpp"

namespace readout {
namespace {

constexpr double kF0Ground = 7.252456e9;
constexpr double kF0Excited = 7.252612e9;
constexpr double kQ = 48000.0;
constexpr double kPeak = 0.73;
constexpr double kCarrier = 7.252534e9;

DispersivePair reference_pair() {
    return DispersivePair::analytic(kF0Ground, kF0Excited, kQ, kPeak);
}

ChainConfig reference_chain() {
    return ChainConfig::typical_lab_chain(reference_pair(), kCarrier);
}

PulseSpec reference_pulse() {
    return PulseSpec{kCarrier, 3.5e-6, -47.0};
}

ChainConfig noiseless_chain(double attenuation_db = 76.0) {
    return ChainConfig(attenuation_db, reference_pair(), {}, {});
}

TEST(TypicalLabChain, HasTheDocumentedStructure) {
    const auto chain = reference_chain();
    EXPECT_DOUBLE_EQ(chain.input_attenuation_db(), 76.0);
    EXPECT_DOUBLE_EQ(chain.ref_impedance(), 50.0);
    EXPECT_DOUBLE_EQ(chain.bandwidth_factor(), 3500.0);

    ASSERT_EQ(chain.output_plane_sources().size(), 1u);
    const auto& photon = chain.output_plane_sources()[0];
    EXPECT_EQ(photon.kind, NoiseKind::quantum_limited);
    EXPECT_DOUBLE_EQ(photon.preceding_gain, 1.0);
    EXPECT_NEAR(photon.temperature_k, 0.502, 0.005 * 0.502);

    ASSERT_EQ(chain.amplifiers().size(), 3u);
    const auto& amps = chain.amplifiers();
    EXPECT_DOUBLE_EQ(amps[0].gain_db, 20.0);
    EXPECT_DOUBLE_EQ(amps[1].gain_db, 40.0);
    EXPECT_DOUBLE_EQ(amps[2].gain_db, 40.0);
    EXPECT_EQ(amps[0].source.kind, NoiseKind::quantum_limited);
    EXPECT_NEAR(amps[0].source.temperature_k, 0.502, 0.005 * 0.502);
    EXPECT_EQ(amps[1].source.kind, NoiseKind::thermal);
    EXPECT_DOUBLE_EQ(amps[1].source.temperature_k, 1.5);
    EXPECT_EQ(amps[2].source.kind, NoiseKind::thermal);
    EXPECT_DOUBLE_EQ(amps[2].source.temperature_k, 54.0);
    // Preceding gains follow from cascade order: 1, 10^2, 10^6.
    EXPECT_DOUBLE_EQ(amps[0].source.preceding_gain, 1.0);
    EXPECT_NEAR(amps[1].source.preceding_gain, 100.0, 1e-6);
    EXPECT_NEAR(amps[2].source.preceding_gain, 1e6, 1.0);

    // all_noise_sources: plane source first, then stages in order.
    const auto sources = chain.all_noise_sources();
    ASSERT_EQ(sources.size(), 4u);
    EXPECT_DOUBLE_EQ(sources[0].preceding_gain, 1.0);
    EXPECT_DOUBLE_EQ(sources[3].temperature_k, 54.0);
}

TEST(TypicalLabChain, TotalGainIsOneHundredDecibels) {
    const auto chain = reference_chain();
    EXPECT_DOUBLE_EQ(chain.total_gain_db(), 100.0);
    EXPECT_NEAR(chain.total_voltage_gain(), 1e5, 1e-6 * 1e5);
}

TEST(Port1Power, GeneratorMinusAttenuation) {
    EXPECT_DOUBLE_EQ(port1_power_dbm(reference_chain(), reference_pulse()),
                     -123.0);
    const PulseSpec hot{kCarrier, 3.5e-6, -30.0};
    EXPECT_DOUBLE_EQ(port1_power_dbm(reference_chain(), hot), -106.0);
}

TEST(Port1Power, PhotonBudgetAtTheResonatorInput) {
    // -123 dBm for 3.5 us at 7.2525 GHz delivers about 365 photons.
    const double p_watts =
        dbm_to_watts(port1_power_dbm(reference_chain(), reference_pulse()));
    EXPECT_NEAR(photon_count(p_watts, kCarrier, 3.5e-6), 365.0, 0.02 * 365.0);
    // The transmitted signal keeps |S21|^2 of that: about 94 photons.
    const auto s21 = reference_pair().state_response(0, kCarrier);
    const double transmitted = p_watts * std::norm(s21);
    EXPECT_NEAR(photon_count(transmitted, kCarrier, 3.5e-6), 94.2,
                0.03 * 94.2);
}

TEST(Propagate, CarrierBinCarriesTheAttenuatedFilteredAmplitude) {
    // Peak generator voltage at -47 dBm is 9.988e-4 V; 76 dB of attenuation
    // scales it by 1.585e-4; the 1/4 duty cycle puts V/4 in the carrier bin;
    // |S21| at the carrier is 0.5079. Product: 2.010e-8 V.
    const SimGrid grid(3.5e-6, 4096, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const auto s0 = propagate(chain, grid, spec, 0);
    const auto s1 = propagate(chain, grid, spec, 1);
    const auto b0 = spectrum_at(s0, kCarrier);
    const auto b1 = spectrum_at(s1, kCarrier);
    EXPECT_NEAR(std::abs(b0), 2.010e-8, 0.02 * 2.010e-8);
    EXPECT_NEAR(std::abs(b1), 2.010e-8, 0.02 * 2.010e-8);
    // The carrier sits above the ground resonance and below the excited one,
    // so the two phasors are near-mirror images across the real axis.
    EXPECT_GT(b0.real(), 0.0);
    EXPECT_LT(b0.imag(), 0.0);
    EXPECT_GT(b1.imag(), 0.0);
    EXPECT_LT(std::abs(b0 - std::conj(b1)), 1e-4 * std::abs(b0));
}

TEST(Propagate, StateSeparationAtTheCarrierBin) {
    // |S21_g - S21_e| at the carrier is 0.7296; times V/4 after attenuation
    // (3.958e-8 V) the blob separation is 2.888e-8 V.
    const SimGrid grid(3.5e-6, 4096, 4.0);
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const auto b0 = spectrum_at(propagate(chain, grid, spec, 0), kCarrier);
    const auto b1 = spectrum_at(propagate(chain, grid, spec, 1), kCarrier);
    EXPECT_NEAR(std::abs(b1 - b0), 2.888e-8, 0.02 * 2.888e-8);
}

TEST(Propagate, VoltageScalesWithGeneratorPower) {
    // +20 dB of generator power is 10x the voltage in every bin. Near-null
    // sinc bins carry FFT rounding noise, so the comparison uses a relative
    // tolerance with an absolute floor well below the carrier-bin signal.
    const SimGrid grid(3.5e-6, 1024, 4.0);
    const auto chain = reference_chain();
    const auto lo = propagate(chain, grid, reference_pulse(), 0);
    const PulseSpec spec_hi{kCarrier, 3.5e-6, -27.0};
    const auto hi = propagate(chain, grid, spec_hi, 0);
    ASSERT_EQ(lo.samples.size(), hi.samples.size());
    const double floor = 1e-12 * std::abs(lo.samples[0]);
    for (std::size_t k = 0; k < lo.samples.size(); ++k) {
        testutil::expect_complex_near(
            hi.samples[k], 10.0 * lo.samples[k],
            1e-12 * std::abs(10.0 * lo.samples[k]) + floor);
    }
}

TEST(Propagate, AttenuationActsOnVoltageAsTenToTheMinusDbOverTwenty) {
    const SimGrid grid(3.5e-6, 1024, 4.0);
    const auto spec = reference_pulse();
    const auto strong = propagate(noiseless_chain(0.0), grid, spec, 0);
    const auto weak = propagate(noiseless_chain(20.0), grid, spec, 0);
    const double floor = 1e-13 * std::abs(strong.samples[0]);
    for (std::size_t k = 0; k < weak.samples.size(); ++k) {
        testutil::expect_complex_near(
            weak.samples[k], 0.1 * strong.samples[k],
            1e-12 * std::abs(strong.samples[k]) + floor);
    }
}

TEST(Propagate, RejectsABadStateIndex) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    EXPECT_THROW(propagate(reference_chain(), grid, reference_pulse(), 2),
                 InvalidArgument);
    EXPECT_THROW(propagate(reference_chain(), grid, reference_pulse(), -1),
                 InvalidArgument);
}

TEST(MeasurementBinVariance, ReferenceChainValue) {
    // Total input-referred PSD 7.35e-22 V^2/Hz times B/t_p = 1e9 Hz/s.
    const double v =
        measurement_bin_variance(reference_chain(), reference_pulse());
    EXPECT_NEAR(v, 7.35e-13, 0.01 * 7.35e-13);
    const double sigma =
        measurement_noise_sigma(reference_chain(), reference_pulse());
    EXPECT_NEAR(sigma, std::sqrt(v / 2.0), 1e-15);
    EXPECT_NEAR(sigma, 6.06e-7, 0.01 * 6.06e-7);
}

TEST(MeasurementBinVariance, ScalesExactlyWithBandwidthFactorAndWidth) {
    const auto chain = reference_chain();
    const auto spec = reference_pulse();
    const double base = measurement_bin_variance(chain, spec);
    const auto chain4 = chain.with_bandwidth_factor(4.0 * 3500.0);
    EXPECT_DOUBLE_EQ(measurement_bin_variance(chain4, spec), 4.0 * base);
    const PulseSpec longer{kCarrier, 4.0 * 3.5e-6, -47.0};
    EXPECT_DOUBLE_EQ(measurement_bin_variance(chain, longer), base / 4.0);
}

TEST(MeasurementBinVariance, NoiselessChainMeasuresZero) {
    const auto chain = noiseless_chain();
    EXPECT_DOUBLE_EQ(measurement_bin_variance(chain, reference_pulse()), 0.0);
    EXPECT_DOUBLE_EQ(measurement_noise_sigma(chain, reference_pulse()), 0.0);
}

TEST(MeasurementBinVariance, LastStageGainDropsOut) {
    // Changing the final amplifier's gain alters the display gain but no
    // preceding gain, so the input-referred noise is bit-identical.
    const auto base = reference_chain();
    std::vector<AmplifierStage> amps = base.amplifiers();
    amps.back().gain_db += 6.0;
    const ChainConfig louder(base.input_attenuation_db(), base.pair(), amps,
                             base.output_plane_sources(), base.ref_impedance(),
                             base.bandwidth_factor());
    EXPECT_NE(louder.total_gain_db(), base.total_gain_db());
    EXPECT_DOUBLE_EQ(measurement_bin_variance(louder, reference_pulse()),
                     measurement_bin_variance(base, reference_pulse()));
}

TEST(ChainConfig, WithBandwidthFactorReplacesOnlyThatField) {
    const auto base = reference_chain();
    const auto copy = base.with_bandwidth_factor(42.0);
    EXPECT_DOUBLE_EQ(copy.bandwidth_factor(), 42.0);
    EXPECT_DOUBLE_EQ(copy.input_attenuation_db(), base.input_attenuation_db());
    EXPECT_EQ(copy.amplifiers().size(), base.amplifiers().size());
    EXPECT_DOUBLE_EQ(copy.ref_impedance(), base.ref_impedance());
}

TEST(ChainConfig, RejectsInconsistentPrecedingGains) {
    const auto pair = reference_pair();
    // Second stage claims preceding gain 10, but the first stage has +20 dB.
    std::vector<AmplifierStage> amps = {
        {"preamp", 20.0, make_noise_source(NoiseKind::quantum_limited, 0.5, 1.0)},
        {"cryo", 40.0, make_noise_source(NoiseKind::thermal, 1.5, 10.0)},
    };
    try {
        ChainConfig bad(76.0, pair, amps, {});
        FAIL() << "inconsistent preceding gain not rejected";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("cryo"), std::string::npos);
    }
}

TEST(ChainConfig, RejectsOutputPlaneSourcesWithGain) {
    const auto pair = reference_pair();
    const std::vector<NoiseSource> plane = {
        make_noise_source(NoiseKind::quantum_limited, 0.5, 2.0)};
    EXPECT_THROW(ChainConfig(76.0, pair, {}, plane), InvalidArgument);
}

TEST(ChainConfig, ValidatesScalarParameters) {
    const auto pair = reference_pair();
    EXPECT_THROW(ChainConfig(-1.0, pair, {}, {}), InvalidArgument);
    EXPECT_THROW(ChainConfig(76.0, pair, {}, {}, 0.0), InvalidArgument);
    EXPECT_THROW(ChainConfig(76.0, pair, {}, {}, 50.0, 0.0), InvalidArgument);
}

TEST(OutputDisplaySpectrum, WithoutNoiseItIsTheInputTimesTheGain) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto in = propagate(chain, grid, reference_pulse(), 0);
    RandomStream rng(99);
    const auto out = output_display_spectrum(chain, in, false, rng);
    const double g = chain.total_voltage_gain();
    ASSERT_EQ(out.samples.size(), in.samples.size());
    for (std::size_t k = 0; k < in.samples.size(); ++k) {
        EXPECT_EQ(out.samples[k], g * in.samples[k]);
    }
}

TEST(OutputDisplaySpectrum, NoiseDrawChangesTheSpectrum) {
    const SimGrid grid(3.5e-6, 256, 4.0);
    const auto chain = reference_chain();
    const auto in = propagate(chain, grid, reference_pulse(), 0);
    RandomStream rng(99);
    const auto noisy = output_display_spectrum(chain, in, true, rng);
    RandomStream rng2(99);
    const auto clean = output_display_spectrum(chain, in, false, rng2);
    bool any_different = false;
    for (std::size_t k = 0; k < noisy.samples.size(); ++k) {
        if (noisy.samples[k] != clean.samples[k]) any_different = true;
    }
    EXPECT_TRUE(any_different);
}

}  // namespace
}  // namespace readout
