#pragma once

#include <complex>
#include <variant>

#include "readoutsim/touchstone.hpp"

namespace readout {

// Single-pole transmission resonance evaluated as
//   S21(f) = A / (1 + 2i Q (f - f0) / f0)
// with A the peak transmission and Q the loaded quality factor. |S21| peaks
// at f0 with value A and falls to A/sqrt(2) at f0 +/- f0/(2Q).
struct ResonatorModel {
    double f0_hz = 0.0;
    double q_loaded = 0.0;
    double peak_transmission = 0.0;
};

// Validating factory: f0 > 0, Q > 0, 0 < A <= 1.
ResonatorModel make_resonator(double f0_hz, double q_loaded,
                              double peak_transmission);

std::complex<double> lorentzian_s21(const ResonatorModel& m, double freq_hz);

// The two transmission responses a dispersively coupled qubit presents:
// state 0 (ground) and state 1 (excited). Either analytic resonances or
// measured S-parameter tables back the responses; chi is the excited-minus-
// ground resonance shift and the readout frequency sits midway between the
// two resonances.
class DispersivePair {
public:
    using Response = std::variant<ResonatorModel, TwoPortTable>;

    static DispersivePair analytic(double f0_ground_hz, double f0_excited_hz,
                                   double q_loaded, double peak_transmission);

    // Resonance frequencies are taken as each table's |S21| peak.
    static DispersivePair from_tables(TwoPortTable ground, TwoPortTable excited);

    double chi_hz() const noexcept { return f0_excited_ - f0_ground_; }
    double readout_frequency() const noexcept {
        return (f0_ground_ + f0_excited_) / 2.0;
    }

    // S21 of the response for qubit state 0 or 1 at an absolute frequency.
    // Table-backed responses refuse frequencies outside the table span.
    std::complex<double> state_response(int state, double freq_hz) const;

    const Response& ground() const noexcept { return ground_; }
    const Response& excited() const noexcept { return excited_; }
    bool table_backed() const noexcept;

private:
    DispersivePair(Response ground, Response excited, double f0_ground_hz,
                   double f0_excited_hz);

    Response ground_;
    Response excited_;
    double f0_ground_;
    double f0_excited_;
};

}  // namespace readout
