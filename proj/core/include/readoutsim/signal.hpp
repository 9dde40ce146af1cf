#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace readout {

// Readout pulse at the generator plane, described in physical terms.
struct PulseSpec {
    double carrier_freq_hz = 0.0;     // demodulation carrier f_c
    double width_s = 0.0;             // pulse (integration) width t_p
    double generator_power_dbm = 0.0; // power at the generator output
};

// Throws InvalidArgument unless carrier and width are positive and the power
// is finite.
void validate_pulse_spec(const PulseSpec& spec);

// Uniform complex-baseband simulation grid. The time window is
// padding * pulse_width so the pulse occupies a 1/padding fraction of it,
// which keeps the frequency resolution df = 1 / window finer than the
// pulse's own bandwidth.
class SimGrid {
public:
    // n must be a power of two >= 64; padding >= 2; pulse width positive.
    SimGrid(double pulse_width_s, std::size_t n, double padding);

    std::size_t size() const noexcept { return n_; }
    double pulse_width() const noexcept { return pulse_width_s_; }
    double padding() const noexcept { return padding_; }
    double window() const noexcept { return window_s_; }   // T, seconds
    double dt() const noexcept { return window_s_ / static_cast<double>(n_); }
    double df() const noexcept { return 1.0 / window_s_; }

    // Baseband frequency carried by spectrum bin k: bins below n/2 map to
    // k * df, bins at or above n/2 to (k - n) * df.
    double baseband_freq(std::size_t k) const;

    // Bin whose baseband frequency is nearest to f_offset, ties resolved
    // toward the lower frequency. Requires |f_offset| <= span/2 where
    // span = n * df; throws RangeError otherwise.
    std::size_t nearest_bin(double f_offset) const;

    bool operator==(const SimGrid&) const = default;

private:
    double pulse_width_s_;
    std::size_t n_;
    double padding_;
    double window_s_;
};

// Complex baseband samples around a carrier, in volts, on a SimGrid.
struct ComplexEnvelope {
    SimGrid grid;
    double carrier_freq_hz;
    std::vector<std::complex<double>> samples;
};

// Frequency-domain counterpart; bin k sits at carrier + baseband_freq(k).
struct Spectrum {
    SimGrid grid;
    double carrier_freq_hz;
    std::vector<std::complex<double>> samples;
};

// Rectangular pulse envelope: the RMS carrier voltage of the generator power
// into ref_impedance for 0 <= t < pulse width, zero for the rest of the
// window. The grid must have been built for spec.width_s.
ComplexEnvelope rect_pulse(const SimGrid& grid, const PulseSpec& spec,
                           double ref_impedance_ohm);

// Discrete Fourier transform with the 1/n factor on the forward direction,
// so bin 0 of the spectrum is the time average of the envelope. Radix-2,
// computed in double precision; forward followed by inverse reproduces the
// input to round-off.
Spectrum fft_forward(const ComplexEnvelope& envelope);
ComplexEnvelope fft_inverse(const Spectrum& spectrum);

// Value of the spectrum bin nearest to the absolute frequency freq_hz
// (nearest in baseband offset from the spectrum's carrier).
std::complex<double> spectrum_at(const Spectrum& spectrum, double freq_hz);

// target.samples[k] += other.samples[k]; grids and carriers must match.
void add_in_place(Spectrum& target, const Spectrum& other);

}  // namespace readout
