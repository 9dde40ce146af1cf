#pragma once

namespace readout {

// Physical constants (exact 2019 SI definitions).
struct Constants {
    double planck_h = 6.62607015e-34;   // J s
    double boltzmann_k = 1.380649e-23;  // J / K
};

inline constexpr Constants kSiConstants{};

// dBm referenced to 1 mW: watts = 1e-3 * 10^(dBm / 10).
double dbm_to_watts(double power_dbm);

// Inverse of dbm_to_watts; requires power_w > 0.
double watts_to_dbm(double power_w);

// RMS voltage of a power dissipated in a resistance: sqrt(P * R).
double power_to_vrms(double power_w, double resistance_ohm);

// Mean photon number delivered by a power over a duration: P * t / (h * f).
double photon_count(double power_w, double freq_hz, double duration_s,
                    const Constants& c = kSiConstants);

}  // namespace readout
