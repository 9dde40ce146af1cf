#include "readoutsim/signal.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <unordered_map>
#include <utility>

#include "readoutsim/errors.hpp"
#include "readoutsim/units.hpp"

namespace readout {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Precomputed bit-reversal permutation and twiddle factors for one size.
// Plans are cached per thread, so the hot Monte Carlo path never locks.
struct FftPlan {
    std::size_t n;
    std::vector<std::size_t> bit_reverse;
    std::vector<std::complex<double>> twiddles;  // e^{-2*pi*i*j/n}, j < n/2

    explicit FftPlan(std::size_t size) : n(size), bit_reverse(size) {
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < bits; ++b) {
                r |= ((i >> b) & 1u) << (bits - 1 - b);
            }
            bit_reverse[i] = r;
        }
        twiddles.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            const double angle =
                -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            twiddles[j] = {std::cos(angle), std::sin(angle)};
        }
    }
};

const FftPlan& plan_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

// In-place radix-2 transform, no normalization. `inverse` flips the twiddle
// sign (e^{+2*pi*i*j/n}).
void transform(std::vector<std::complex<double>>& a, const FftPlan& plan,
               bool inverse) {
    const std::size_t n = plan.n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = plan.bit_reverse[i];
        if (j > i) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                std::complex<double> w = plan.twiddles[k * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> odd = a[start + half + k] * w;
                const std::complex<double> even = a[start + k];
                a[start + k] = even + odd;
                a[start + half + k] = even - odd;
            }
        }
    }
}

void check_length(std::size_t samples, std::size_t grid_n) {
    if (samples != grid_n) {
        throw InvalidArgument("sample count " + std::to_string(samples) +
                              " does not match grid size " +
                              std::to_string(grid_n));
    }
}

}  // namespace

void validate_pulse_spec(const PulseSpec& spec) {
    if (!std::isfinite(spec.carrier_freq_hz) || spec.carrier_freq_hz <= 0.0) {
        throw InvalidArgument("pulse carrier frequency must be positive, got " +
                              std::to_string(spec.carrier_freq_hz));
    }
    if (!std::isfinite(spec.width_s) || spec.width_s <= 0.0) {
        throw InvalidArgument("pulse width must be positive, got " +
                              std::to_string(spec.width_s));
    }
    if (!std::isfinite(spec.generator_power_dbm)) {
        throw InvalidArgument("generator power must be finite");
    }
}

SimGrid::SimGrid(double pulse_width_s, std::size_t n, double padding)
    : pulse_width_s_(pulse_width_s), n_(n), padding_(padding),
      window_s_(padding * pulse_width_s) {
    if (!std::isfinite(pulse_width_s_) || pulse_width_s_ <= 0.0) {
        throw InvalidArgument("grid pulse width must be positive, got " +
                              std::to_string(pulse_width_s_));
    }
    if (n_ < 64 || !is_power_of_two(n_)) {
        throw InvalidArgument("grid size must be a power of two >= 64, got " +
                              std::to_string(n_));
    }
    if (!std::isfinite(padding_) || padding_ < 2.0) {
        throw InvalidArgument("grid padding must be >= 2, got " +
                              std::to_string(padding_));
    }
}

double SimGrid::baseband_freq(std::size_t k) const {
    if (k >= n_) {
        throw InvalidArgument("bin " + std::to_string(k) +
                              " outside grid of size " + std::to_string(n_));
    }
    const auto sk = static_cast<double>(k);
    const auto sn = static_cast<double>(n_);
    return (k < n_ / 2 ? sk : sk - sn) * df();
}

std::size_t SimGrid::nearest_bin(double f_offset) const {
    const double span = static_cast<double>(n_) * df();
    if (!std::isfinite(f_offset) || std::abs(f_offset) > span / 2.0) {
        throw RangeError("frequency offset " + std::to_string(f_offset) +
                         " Hz outside grid span of +/-" +
                         std::to_string(span / 2.0) + " Hz");
    }
    // Round to the nearest integer bin index; exact half steps go down.
    const auto half = static_cast<double>(n_ / 2);
    double k = std::ceil(f_offset / df() - 0.5);
    if (k > half - 1.0) k = half - 1.0;  // +span/2 itself: highest positive bin
    if (k < 0.0) k += static_cast<double>(n_);
    return static_cast<std::size_t>(k);
}

ComplexEnvelope rect_pulse(const SimGrid& grid, const PulseSpec& spec,
                           double ref_impedance_ohm) {
    validate_pulse_spec(spec);
    const double rel = std::abs(grid.pulse_width() - spec.width_s) /
                       spec.width_s;
    if (rel > 1e-12) {
        throw InvalidArgument("grid was built for pulse width " +
                              std::to_string(grid.pulse_width()) +
                              " s, not " + std::to_string(spec.width_s) + " s");
    }
    const double v_peak = power_to_vrms(dbm_to_watts(spec.generator_power_dbm),
                                        ref_impedance_ohm);
    ComplexEnvelope env{grid, spec.carrier_freq_hz, {}};
    env.samples.resize(grid.size());
    const double dt = grid.dt();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = static_cast<double>(i) * dt;
        env.samples[i] = (t < spec.width_s) ? v_peak : 0.0;
    }
    return env;
}

Spectrum fft_forward(const ComplexEnvelope& envelope) {
    check_length(envelope.samples.size(), envelope.grid.size());
    Spectrum out{envelope.grid, envelope.carrier_freq_hz, envelope.samples};
    transform(out.samples, plan_for(out.grid.size()), /*inverse=*/false);
    const double scale = 1.0 / static_cast<double>(out.grid.size());
    for (auto& v : out.samples) v *= scale;
    return out;
}

ComplexEnvelope fft_inverse(const Spectrum& spectrum) {
    check_length(spectrum.samples.size(), spectrum.grid.size());
    ComplexEnvelope out{spectrum.grid, spectrum.carrier_freq_hz,
                        spectrum.samples};
    // The 1/n of the forward direction already makes the unnormalized
    // inverse sum reproduce the time samples.
    transform(out.samples, plan_for(out.grid.size()), /*inverse=*/true);
    return out;
}

std::complex<double> spectrum_at(const Spectrum& spectrum, double freq_hz) {
    check_length(spectrum.samples.size(), spectrum.grid.size());
    const std::size_t k =
        spectrum.grid.nearest_bin(freq_hz - spectrum.carrier_freq_hz);
    return spectrum.samples[k];
}

void add_in_place(Spectrum& target, const Spectrum& other) {
    if (!(target.grid == other.grid) ||
        target.carrier_freq_hz != other.carrier_freq_hz) {
        throw InvalidArgument("cannot add spectra on different grids or carriers");
    }
    check_length(target.samples.size(), target.grid.size());
    check_length(other.samples.size(), other.grid.size());
    for (std::size_t k = 0; k < target.samples.size(); ++k) {
        target.samples[k] += other.samples[k];
    }
}

}  // namespace readout
