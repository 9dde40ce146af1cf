#include "readoutsim/units.hpp"

#include <cmath>
#include <string>

#include "readoutsim/errors.hpp"

namespace readout {

double dbm_to_watts(double power_dbm) {
    if (!std::isfinite(power_dbm)) {
        throw InvalidArgument("dbm_to_watts: power must be finite, got " +
                              std::to_string(power_dbm));
    }
    return 1e-3 * std::pow(10.0, power_dbm / 10.0);
}

double watts_to_dbm(double power_w) {
    if (!std::isfinite(power_w) || power_w <= 0.0) {
        throw InvalidArgument("watts_to_dbm: power must be positive, got " +
                              std::to_string(power_w));
    }
    return 10.0 * std::log10(power_w / 1e-3);
}

double power_to_vrms(double power_w, double resistance_ohm) {
    if (!std::isfinite(power_w) || power_w < 0.0) {
        throw InvalidArgument("power_to_vrms: power must be non-negative, got " +
                              std::to_string(power_w));
    }
    if (!std::isfinite(resistance_ohm) || resistance_ohm <= 0.0) {
        throw InvalidArgument("power_to_vrms: resistance must be positive, got " +
                              std::to_string(resistance_ohm));
    }
    return std::sqrt(power_w * resistance_ohm);
}

double photon_count(double power_w, double freq_hz, double duration_s,
                    const Constants& c) {
    if (!std::isfinite(power_w) || power_w < 0.0) {
        throw InvalidArgument("photon_count: power must be non-negative, got " +
                              std::to_string(power_w));
    }
    if (!std::isfinite(freq_hz) || freq_hz <= 0.0) {
        throw InvalidArgument("photon_count: frequency must be positive, got " +
                              std::to_string(freq_hz));
    }
    if (!std::isfinite(duration_s) || duration_s <= 0.0) {
        throw InvalidArgument("photon_count: duration must be positive, got " +
                              std::to_string(duration_s));
    }
    return power_w * duration_s / (c.planck_h * freq_hz);
}

}  // namespace readout
