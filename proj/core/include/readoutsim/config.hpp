#pragma once

#include <cstdint>
#include <string>

#include "readoutsim/chain.hpp"
#include "readoutsim/sweep.hpp"

namespace readout {

// A fully validated simulation setup. Field defaults (applied for keys a
// JSON config omits) describe the reference experiment: a -47 dBm, 3.5 us
// pulse at 7.252534 GHz; a Q = 48000 resonator pair split by 156 kHz with
// peak transmission 0.73; the typical_lab_chain amplifier cascade behind
// 76 dB of input attenuation; bandwidth factor 3500; a 4096-point grid with
// padding 4; 1000 trials.
struct RunConfig {
    PulseSpec pulse;
    ChainConfig chain;
    GridParams grid;
    std::size_t trials = 1000;
    std::uint64_t seed = 12345;
    CalibrationPoint calibration;
};

RunConfig default_config();

// Parse a JSON object into a RunConfig. Unknown keys anywhere are rejected;
// every validation failure throws ConfigError naming the dotted key path.
// Relative S-parameter file paths resolve against base_dir (empty = current
// directory).
RunConfig parse_config_text(const std::string& json_text,
                            const std::string& base_dir = "");

// Load and parse a JSON config file; relative paths inside it resolve
// against the file's own directory.
RunConfig load_config(const std::string& path);

// The chain with its bandwidth factor resolved: calibrated when the config
// asks for a target error, otherwise as configured.
ChainConfig resolved_chain(const RunConfig& cfg);

}  // namespace readout
