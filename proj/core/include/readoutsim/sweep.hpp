#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "readoutsim/fidelity.hpp"

namespace readout {

// Simulation grid shape shared by every point of a run.
struct GridParams {
    std::size_t n = 4096;
    double padding = 4.0;
};

// One evaluated operating point. `parameter` is the swept quantity: pulse
// width in seconds for width sweeps, generator power offset in dB for power
// sweeps.
struct SweepRow {
    double parameter = 0.0;
    double d_volts = 0.0;        // noiseless blob separation
    double sigma_volts = 0.0;    // per-quadrature noise at the readout bin
    double snr = 0.0;
    double analytic_error = 0.0;
    double empirical_error = 0.0;
};

// How to choose the bandwidth factor: either take b_value as-is, or find the
// B whose analytic error at `spec` equals target_error. Exactly one of the
// two must be set; target_error must lie in (0, 0.5).
struct CalibrationPoint {
    PulseSpec spec;
    std::optional<double> b_value;
    std::optional<double> target_error;
};

// Noiseless blob separation |bin(state 1) - bin(state 0)| at the readout
// bin, volts.
double noiseless_separation(const ChainConfig& cfg, const SimGrid& grid,
                            const PulseSpec& spec);

// Resolve the bandwidth factor for a chain. The target-error form searches
// by bisection (on log B, over a bracket wide enough for any convention of
// FFT normalization and windowing) until the bracket is negligibly narrow;
// the analytic error at the returned B matches the target to better than
// 0.1% relative. Throws CalibrationInfeasible, with the errors at both
// bracket ends in the message, if no B can reach the target (for example a
// noiseless chain or coincident blobs).
double calibrate_b(const ChainConfig& cfg, const CalibrationPoint& point,
                   const GridParams& grid);

// Error versus pulse width at fixed power. Widths must be positive and
// ascending. Row i draws its ensemble from the seed derive_seed(seed, i),
// so a row can be reproduced in isolation from (seed, i) alone and rows
// never share noise samples.
std::vector<SweepRow> sweep_pulse_width(const ChainConfig& cfg,
                                        const PulseSpec& base,
                                        std::span<const double> widths_s,
                                        std::size_t n_trials,
                                        std::uint64_t seed,
                                        const GridParams& grid,
                                        unsigned n_workers = 0);

// Error versus generator power offset (dB relative to base) at fixed width.
// Offsets must be ascending.
std::vector<SweepRow> sweep_power(const ChainConfig& cfg,
                                  const PulseSpec& base,
                                  std::span<const double> rel_powers_db,
                                  std::size_t n_trials, std::uint64_t seed,
                                  const GridParams& grid,
                                  unsigned n_workers = 0);

// Parameter value where the analytic error crosses `threshold`,
// log-linearly interpolated between the two bracketing rows (linear in
// parameter, linear in log error). Requires at least two rows with monotone
// analytic errors; throws KneeNotBracketed when every row sits on one side
// of the threshold.
double knee_detect(std::span<const SweepRow> rows, double threshold);

}  // namespace readout
