#include "readoutsim/resonator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "readoutsim/errors.hpp"

namespace readout {

ResonatorModel make_resonator(double f0_hz, double q_loaded,
                              double peak_transmission) {
    if (!std::isfinite(f0_hz) || f0_hz <= 0.0) {
        throw InvalidArgument("resonance frequency must be positive, got " +
                              std::to_string(f0_hz));
    }
    if (!std::isfinite(q_loaded) || q_loaded <= 0.0) {
        throw InvalidArgument("loaded Q must be positive, got " +
                              std::to_string(q_loaded));
    }
    if (!std::isfinite(peak_transmission) || peak_transmission <= 0.0 ||
        peak_transmission > 1.0) {
        throw InvalidArgument("peak transmission must lie in (0, 1], got " +
                              std::to_string(peak_transmission));
    }
    return ResonatorModel{f0_hz, q_loaded, peak_transmission};
}

std::complex<double> lorentzian_s21(const ResonatorModel& m, double freq_hz) {
    if (!std::isfinite(freq_hz) || freq_hz <= 0.0) {
        throw InvalidArgument("frequency must be positive, got " +
                              std::to_string(freq_hz));
    }
    const double x = 2.0 * m.q_loaded * (freq_hz - m.f0_hz) / m.f0_hz;
    return m.peak_transmission / std::complex<double>(1.0, x);
}

DispersivePair::DispersivePair(Response ground, Response excited,
                               double f0_ground_hz, double f0_excited_hz)
    : ground_(std::move(ground)), excited_(std::move(excited)),
      f0_ground_(f0_ground_hz), f0_excited_(f0_excited_hz) {
    if (f0_ground_ == f0_excited_) {
        throw DegeneratePair(
            "ground and excited resonances coincide at " +
            std::to_string(f0_ground_) + " Hz; no dispersive shift");
    }
}

DispersivePair DispersivePair::analytic(double f0_ground_hz,
                                        double f0_excited_hz, double q_loaded,
                                        double peak_transmission) {
    ResonatorModel g = make_resonator(f0_ground_hz, q_loaded, peak_transmission);
    ResonatorModel e = make_resonator(f0_excited_hz, q_loaded, peak_transmission);
    return DispersivePair(std::move(g), std::move(e), f0_ground_hz,
                          f0_excited_hz);
}

DispersivePair DispersivePair::from_tables(TwoPortTable ground,
                                           TwoPortTable excited) {
    const double f_g = ground.peak_s21_freq();
    const double f_e = excited.peak_s21_freq();
    return DispersivePair(std::move(ground), std::move(excited), f_g, f_e);
}

std::complex<double> DispersivePair::state_response(int state,
                                                    double freq_hz) const {
    if (state != 0 && state != 1) {
        throw InvalidArgument("qubit state must be 0 or 1, got " +
                              std::to_string(state));
    }
    const Response& r = (state == 0) ? ground_ : excited_;
    if (const auto* model = std::get_if<ResonatorModel>(&r)) {
        return lorentzian_s21(*model, freq_hz);
    }
    return std::get<TwoPortTable>(r).interpolate_s21(freq_hz);
}

bool DispersivePair::table_backed() const noexcept {
    return std::holds_alternative<TwoPortTable>(ground_);
}

}  // namespace readout
