#pragma once

#include <span>
#include <string>

#include "readoutsim/montecarlo.hpp"
#include "readoutsim/sweep.hpp"

namespace readout {

// Scientific notation with 9 significant digits; enough to reproduce every
// double the simulator emits to visual precision, and stable across
// platforms for byte-comparable output.
std::string format_number(double value);

// CSV with header
//   parameter,d_volts,sigma_volts,snr,analytic_error,empirical_error
// and one row per sweep point, every number through format_number.
std::string sweep_csv(std::span<const SweepRow> rows);

// CSV with header
//   state,trial,i_volts,q_volts
// one row per trial, all state-0 rows first.
std::string iq_csv(const IQEnsemble& ensemble);

// Self-contained SVG: analytic error as a line and empirical error as
// markers over the swept parameter, log-scaled error axis.
std::string sweep_svg(std::span<const SweepRow> rows, const std::string& title,
                      const std::string& x_label);

// Self-contained SVG scatter of the two I-Q blobs.
std::string iq_scatter_svg(const IQEnsemble& ensemble,
                           const std::string& title);

}  // namespace readout
