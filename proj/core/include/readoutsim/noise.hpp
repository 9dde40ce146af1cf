#pragma once

#include <span>

#include "readoutsim/rng.hpp"
#include "readoutsim/signal.hpp"
#include "readoutsim/units.hpp"

namespace readout {

// White voltage-noise source in the readout chain, referred to the
// resonator output plane by the gain of every stage preceding it.
enum class NoiseKind {
    quantum_limited,  // one-sided PSD k T R   (T at or near the quantum limit)
    thermal,          // one-sided PSD 4 k T R (physical-temperature stage)
};

struct NoiseSource {
    NoiseKind kind = NoiseKind::quantum_limited;
    double temperature_k = 0.0;
    // Linear power gain of everything between the resonator output plane and
    // this source's injection point; 1 for sources at the plane itself.
    double preceding_gain = 1.0;
};

// Validating factory: temperature > 0, preceding_gain >= 1.
NoiseSource make_noise_source(NoiseKind kind, double temperature_k,
                              double preceding_gain = 1.0);

// PSD prefactor implied by the source kind: 1 (kTR) or 4 (4kTR).
double psd_factor(NoiseKind kind);

// Noise temperature of a quantum-limited amplifier at a frequency:
//   T_n = h f / (k ln 2)
// about 0.5 K near 7.25 GHz. Proportional to f.
double quantum_limit_temperature(double freq_hz,
                                 const Constants& c = kSiConstants);

// One-sided voltage PSD of a source across a resistance, V^2/Hz, before
// input referral: psd_factor * k * T * R.
double source_psd(const NoiseSource& source, double resistance_ohm,
                  const Constants& c = kSiConstants);

// Friis-style sum: each source's PSD divided by its preceding gain, summed.
// The result lives at the resonator output plane. Requires a non-empty list.
double total_input_referred_psd(std::span<const NoiseSource> sources,
                                double resistance_ohm,
                                const Constants& c = kSiConstants);

// Variance of one measured spectrum bin: psd * bandwidth_factor / pulse_width.
// The dimensionless bandwidth factor absorbs the conversion from a PSD to
// the variance of a single demodulated bin under this library's FFT and
// windowing conventions; it is fixed once by calibration (see sweep.hpp) and
// is not portable across conventions.
double noise_bin_variance(double psd_v2_per_hz, double bandwidth_factor,
                          double pulse_width_s);

// A noise draw: n i.i.d. complex Gaussian time samples (independent real and
// imaginary parts) transformed to the frequency domain, scaled so every
// spectrum bin has complex variance bin_variance_v2. The 1/n forward FFT
// averages n samples into each bin, dividing the per-sample variance by n,
// so the time samples are drawn with variance n * bin_variance_v2. The
// resulting noise is white: all bins share the same variance.
Spectrum sample_noise_spectrum(const SimGrid& grid, double carrier_freq_hz,
                               double bin_variance_v2, RandomStream& rng);

}  // namespace readout
