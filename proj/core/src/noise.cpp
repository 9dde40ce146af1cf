#include "readoutsim/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "readoutsim/errors.hpp"

namespace readout {

NoiseSource make_noise_source(NoiseKind kind, double temperature_k,
                              double preceding_gain) {
    if (!std::isfinite(temperature_k) || temperature_k <= 0.0) {
        throw InvalidArgument("noise temperature must be positive, got " +
                              std::to_string(temperature_k));
    }
    if (!std::isfinite(preceding_gain) || preceding_gain < 1.0) {
        throw InvalidArgument("preceding gain must be >= 1, got " +
                              std::to_string(preceding_gain));
    }
    return NoiseSource{kind, temperature_k, preceding_gain};
}

double psd_factor(NoiseKind kind) {
    return kind == NoiseKind::thermal ? 4.0 : 1.0;
}

double quantum_limit_temperature(double freq_hz, const Constants& c) {
    if (!std::isfinite(freq_hz) || freq_hz <= 0.0) {
        throw InvalidArgument("frequency must be positive, got " +
                              std::to_string(freq_hz));
    }
    return c.planck_h * freq_hz / (c.boltzmann_k * std::numbers::ln2);
}

double source_psd(const NoiseSource& source, double resistance_ohm,
                  const Constants& c) {
    if (!std::isfinite(resistance_ohm) || resistance_ohm <= 0.0) {
        throw InvalidArgument("resistance must be positive, got " +
                              std::to_string(resistance_ohm));
    }
    // Re-check the fields in case the struct was built without the factory.
    if (!std::isfinite(source.temperature_k) || source.temperature_k <= 0.0) {
        throw InvalidArgument("noise temperature must be positive, got " +
                              std::to_string(source.temperature_k));
    }
    return psd_factor(source.kind) * c.boltzmann_k * source.temperature_k *
           resistance_ohm;
}

double total_input_referred_psd(std::span<const NoiseSource> sources,
                                double resistance_ohm, const Constants& c) {
    if (sources.empty()) {
        throw InvalidArgument("noise source list is empty");
    }
    double total = 0.0;
    for (const NoiseSource& s : sources) {
        if (!std::isfinite(s.preceding_gain) || s.preceding_gain < 1.0) {
            throw InvalidArgument("preceding gain must be >= 1, got " +
                                  std::to_string(s.preceding_gain));
        }
        total += source_psd(s, resistance_ohm, c) / s.preceding_gain;
    }
    return total;
}

double noise_bin_variance(double psd_v2_per_hz, double bandwidth_factor,
                          double pulse_width_s) {
    if (!std::isfinite(psd_v2_per_hz) || psd_v2_per_hz < 0.0) {
        throw InvalidArgument("PSD must be non-negative, got " +
                              std::to_string(psd_v2_per_hz));
    }
    if (!std::isfinite(bandwidth_factor) || bandwidth_factor <= 0.0) {
        throw InvalidArgument("bandwidth factor must be positive, got " +
                              std::to_string(bandwidth_factor));
    }
    if (!std::isfinite(pulse_width_s) || pulse_width_s <= 0.0) {
        throw InvalidArgument("pulse width must be positive, got " +
                              std::to_string(pulse_width_s));
    }
    return psd_v2_per_hz * bandwidth_factor / pulse_width_s;
}

Spectrum sample_noise_spectrum(const SimGrid& grid, double carrier_freq_hz,
                               double bin_variance_v2, RandomStream& rng) {
    if (!std::isfinite(bin_variance_v2) || bin_variance_v2 < 0.0) {
        throw InvalidArgument("bin variance must be non-negative, got " +
                              std::to_string(bin_variance_v2));
    }
    if (bin_variance_v2 == 0.0) {
        Spectrum zero{grid, carrier_freq_hz, {}};
        zero.samples.assign(grid.size(), {0.0, 0.0});
        return zero;
    }
    const auto n = static_cast<double>(grid.size());
    // Per-sample complex variance n * bin_variance, split evenly between the
    // real and imaginary parts.
    const double part_sigma = std::sqrt(n * bin_variance_v2 / 2.0);
    ComplexEnvelope env{grid, carrier_freq_hz, {}};
    env.samples.resize(grid.size());
    for (auto& sample : env.samples) {
        const auto [z0, z1] = rng.next_normal_pair();
        sample = {part_sigma * z0, part_sigma * z1};
    }
    return fft_forward(env);
}

}  // namespace readout
