#pragma once

#include <string>
#include <vector>

#include "readoutsim/noise.hpp"
#include "readoutsim/resonator.hpp"
#include "readoutsim/signal.hpp"

namespace readout {

// One amplifier in the output cascade: display gain plus the stage's own
// noise contribution. The source's preceding_gain must equal the product of
// the linear gains of every amplifier before this one in the chain.
struct AmplifierStage {
    std::string name;
    double gain_db = 0.0;
    NoiseSource source;
};

// The readout path from generator to digitizer: fixed input attenuation,
// the per-qubit-state resonator response, and an amplifier cascade. All
// noise is handled input-referred at the resonator output plane, so the
// measured signal-to-noise ratio is independent of the amplifier gain; the
// gain only scales spectra for display. Immutable after construction.
class ChainConfig {
public:
    ChainConfig(double input_attenuation_db, DispersivePair pair,
                std::vector<AmplifierStage> amplifiers,
                std::vector<NoiseSource> output_plane_sources,
                double ref_impedance_ohm = 50.0,
                double bandwidth_factor = 3500.0);

    // Default chain: 76 dB input attenuation; a quantum-limited photon-
    // fluctuation source at the resonator output; then a quantum-limited
    // +20 dB preamplifier, a +40 dB cryogenic stage at 1.5 K, and a +40 dB
    // room-temperature stage at 54 K. Quantum-limited temperatures are
    // evaluated at the given carrier frequency.
    static ChainConfig typical_lab_chain(DispersivePair pair,
                                         double carrier_freq_hz);

    double input_attenuation_db() const noexcept { return input_attenuation_db_; }
    const DispersivePair& pair() const noexcept { return pair_; }
    const std::vector<AmplifierStage>& amplifiers() const noexcept {
        return amplifiers_;
    }
    const std::vector<NoiseSource>& output_plane_sources() const noexcept {
        return output_plane_sources_;
    }
    double ref_impedance() const noexcept { return ref_impedance_ohm_; }
    double bandwidth_factor() const noexcept { return bandwidth_factor_; }

    // Copy of this chain with a different bandwidth factor (how a
    // calibrated B is installed).
    ChainConfig with_bandwidth_factor(double bandwidth_factor) const;

    // Output-plane sources followed by each amplifier's source, in cascade
    // order. May be empty, which means a noiseless chain.
    std::vector<NoiseSource> all_noise_sources() const;

    double total_gain_db() const noexcept;
    double total_voltage_gain() const noexcept;

private:
    double input_attenuation_db_;
    DispersivePair pair_;
    std::vector<AmplifierStage> amplifiers_;
    std::vector<NoiseSource> output_plane_sources_;
    double ref_impedance_ohm_;
    double bandwidth_factor_;
};

// Power arriving at the resonator input: generator power minus the input
// attenuation, in dBm.
double port1_power_dbm(const ChainConfig& cfg, const PulseSpec& spec);

// Noiseless signal spectrum at the resonator output plane for one qubit
// state: the attenuated rectangular pulse transformed to the frequency
// domain, each bin multiplied by the state's S21 at that bin's absolute
// frequency. Table-backed responses must cover the whole grid span.
Spectrum propagate(const ChainConfig& cfg, const SimGrid& grid,
                   const PulseSpec& spec, int state);

// Complex variance of the measured readout bin, V^2: the total
// input-referred PSD times bandwidth_factor / pulse width. Zero for a chain
// with no noise sources.
double measurement_bin_variance(const ChainConfig& cfg, const PulseSpec& spec);

// Per-quadrature noise standard deviation at the readout bin, V: half the
// bin variance per quadrature.
double measurement_noise_sigma(const ChainConfig& cfg, const PulseSpec& spec);

// The spectrum as a spectrum analyzer after the amplifiers would show it:
// input plus (optionally) one noise draw, scaled by the cascade voltage
// gain. Display-only; fidelity results never depend on it.
Spectrum output_display_spectrum(const ChainConfig& cfg, const Spectrum& s,
                                 bool with_noise, RandomStream& rng);

}  // namespace readout
