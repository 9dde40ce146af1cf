#include "readoutsim/chain.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "readoutsim/errors.hpp"
#include "readoutsim/units.hpp"

namespace readout {

ChainConfig::ChainConfig(double input_attenuation_db, DispersivePair pair,
                         std::vector<AmplifierStage> amplifiers,
                         std::vector<NoiseSource> output_plane_sources,
                         double ref_impedance_ohm, double bandwidth_factor)
    : input_attenuation_db_(input_attenuation_db), pair_(std::move(pair)),
      amplifiers_(std::move(amplifiers)),
      output_plane_sources_(std::move(output_plane_sources)),
      ref_impedance_ohm_(ref_impedance_ohm),
      bandwidth_factor_(bandwidth_factor) {
    if (!std::isfinite(input_attenuation_db_) || input_attenuation_db_ < 0.0) {
        throw InvalidArgument("input attenuation must be >= 0 dB, got " +
                              std::to_string(input_attenuation_db_));
    }
    if (!std::isfinite(ref_impedance_ohm_) || ref_impedance_ohm_ <= 0.0) {
        throw InvalidArgument("reference impedance must be positive, got " +
                              std::to_string(ref_impedance_ohm_));
    }
    if (!std::isfinite(bandwidth_factor_) || bandwidth_factor_ <= 0.0) {
        throw InvalidArgument("bandwidth factor must be positive, got " +
                              std::to_string(bandwidth_factor_));
    }
    for (const NoiseSource& s : output_plane_sources_) {
        make_noise_source(s.kind, s.temperature_k, s.preceding_gain);
        if (s.preceding_gain != 1.0) {
            throw InvalidArgument(
                "output-plane noise sources sit before any amplifier and "
                "must have preceding gain 1, got " +
                std::to_string(s.preceding_gain));
        }
    }
    // Each amplifier's noise enters after every earlier stage's gain.
    double gain_so_far = 1.0;
    for (const AmplifierStage& stage : amplifiers_) {
        if (!std::isfinite(stage.gain_db)) {
            throw InvalidArgument("amplifier gain must be finite");
        }
        make_noise_source(stage.source.kind, stage.source.temperature_k,
                          stage.source.preceding_gain);
        const double expected = gain_so_far;
        const double rel =
            std::abs(stage.source.preceding_gain - expected) / expected;
        if (rel > 1e-6) {
            throw InvalidArgument(
                "amplifier '" + stage.name + "': preceding gain " +
                std::to_string(stage.source.preceding_gain) +
                " does not match the cascade gain before it (" +
                std::to_string(expected) + ")");
        }
        gain_so_far *= std::pow(10.0, stage.gain_db / 10.0);
    }
}

ChainConfig ChainConfig::typical_lab_chain(DispersivePair pair,
                                           double carrier_freq_hz) {
    const double t_q = quantum_limit_temperature(carrier_freq_hz);
    std::vector<NoiseSource> plane = {
        make_noise_source(NoiseKind::quantum_limited, t_q, 1.0),
    };
    std::vector<AmplifierStage> amps;
    amps.push_back({"preamp", 20.0,
                    make_noise_source(NoiseKind::quantum_limited, t_q, 1.0)});
    amps.push_back({"cryo", 40.0,
                    make_noise_source(NoiseKind::thermal, 1.5, 100.0)});
    amps.push_back({"room", 40.0,
                    make_noise_source(NoiseKind::thermal, 54.0, 1e6)});
    return ChainConfig(76.0, std::move(pair), std::move(amps),
                       std::move(plane));
}

ChainConfig ChainConfig::with_bandwidth_factor(double bandwidth_factor) const {
    ChainConfig copy = *this;
    if (!std::isfinite(bandwidth_factor) || bandwidth_factor <= 0.0) {
        throw InvalidArgument("bandwidth factor must be positive, got " +
                              std::to_string(bandwidth_factor));
    }
    copy.bandwidth_factor_ = bandwidth_factor;
    return copy;
}

std::vector<NoiseSource> ChainConfig::all_noise_sources() const {
    std::vector<NoiseSource> all = output_plane_sources_;
    for (const AmplifierStage& stage : amplifiers_) {
        all.push_back(stage.source);
    }
    return all;
}

double ChainConfig::total_gain_db() const noexcept {
    double total = 0.0;
    for (const AmplifierStage& stage : amplifiers_) total += stage.gain_db;
    return total;
}

double ChainConfig::total_voltage_gain() const noexcept {
    return std::pow(10.0, total_gain_db() / 20.0);
}

double port1_power_dbm(const ChainConfig& cfg, const PulseSpec& spec) {
    validate_pulse_spec(spec);
    return spec.generator_power_dbm - cfg.input_attenuation_db();
}

Spectrum propagate(const ChainConfig& cfg, const SimGrid& grid,
                   const PulseSpec& spec, int state) {
    if (state != 0 && state != 1) {
        throw InvalidArgument("qubit state must be 0 or 1, got " +
                              std::to_string(state));
    }
    ComplexEnvelope env = rect_pulse(grid, spec, cfg.ref_impedance());
    const double atten =
        std::pow(10.0, -cfg.input_attenuation_db() / 20.0);
    for (auto& v : env.samples) v *= atten;
    Spectrum out = fft_forward(env);
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        const double f_abs = spec.carrier_freq_hz + grid.baseband_freq(k);
        out.samples[k] *= cfg.pair().state_response(state, f_abs);
    }
    return out;
}

double measurement_bin_variance(const ChainConfig& cfg, const PulseSpec& spec) {
    validate_pulse_spec(spec);
    const std::vector<NoiseSource> sources = cfg.all_noise_sources();
    if (sources.empty()) return 0.0;  // noiseless chain
    const double psd = total_input_referred_psd(sources, cfg.ref_impedance());
    return noise_bin_variance(psd, cfg.bandwidth_factor(), spec.width_s);
}

double measurement_noise_sigma(const ChainConfig& cfg, const PulseSpec& spec) {
    return std::sqrt(measurement_bin_variance(cfg, spec) / 2.0);
}

Spectrum output_display_spectrum(const ChainConfig& cfg, const Spectrum& s,
                                 bool with_noise, RandomStream& rng) {
    Spectrum out = s;
    if (with_noise) {
        const PulseSpec implied{s.carrier_freq_hz, s.grid.pulse_width(), 0.0};
        Spectrum noise = sample_noise_spectrum(
            s.grid, s.carrier_freq_hz, measurement_bin_variance(cfg, implied),
            rng);
        add_in_place(out, noise);
    }
    const double gain = cfg.total_voltage_gain();
    for (auto& v : out.samples) v *= gain;
    return out;
}

}  // namespace readout
