#include "readoutsim/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "readoutsim/errors.hpp"

namespace readout {

namespace {

using nlohmann::json;

std::string join_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

void require_object(const json& value, const std::string& path) {
    if (!value.is_object()) {
        throw ConfigError("must be a JSON object", path);
    }
}

// Strict schema: anything not in `allowed` is a typo or a misunderstanding,
// and silently ignoring it would mis-simulate, so reject it.
void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key", join_path(path, item.key()));
        }
    }
}

double get_number(const json& obj, const std::string& path,
                  const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError("must be a number", join_path(path, key));
    }
    return v.get<double>();
}

std::uint64_t get_unsigned(const json& obj, const std::string& path,
                           const std::string& key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d >= 0.0 && d == std::floor(d) && d <= 1.8e19) {
            return static_cast<std::uint64_t>(d);
        }
    }
    throw ConfigError("must be a non-negative integer", join_path(path, key));
}

bool get_bool(const json& obj, const std::string& path, const std::string& key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        throw ConfigError("must be true or false", join_path(path, key));
    }
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError("must be a string", join_path(path, key));
    }
    return v.get<std::string>();
}

std::string resolve_path(const std::string& file, const std::string& base_dir) {
    std::filesystem::path p(file);
    if (p.is_absolute() || base_dir.empty()) return file;
    return (std::filesystem::path(base_dir) / p).string();
}

// Re-throw a value-level failure from a validating factory under the
// config key that carries the bad value.
template <typename Fn>
auto under_key(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what(), path);
    }
}

struct ResonatorDefaults {
    double f0_ground_hz = 7.252456e9;
    double f0_excited_hz = 7.252612e9;
    double q_loaded = 48000.0;
    double peak_transmission = 0.73;
};

DispersivePair parse_resonator(const json& root, const std::string& base_dir) {
    const ResonatorDefaults d;
    if (!root.contains("resonator")) {
        return DispersivePair::analytic(d.f0_ground_hz, d.f0_excited_hz,
                                        d.q_loaded, d.peak_transmission);
    }
    const json& r = root.at("resonator");
    require_object(r, "resonator");
    check_keys(r, "resonator",
               {"f0_ground_hz", "f0_excited_hz", "q_loaded",
                "peak_transmission", "s2p_ground", "s2p_excited"});

    const bool has_tables = r.contains("s2p_ground") || r.contains("s2p_excited");
    const bool has_analytic = r.contains("f0_ground_hz") ||
                              r.contains("f0_excited_hz") ||
                              r.contains("q_loaded") ||
                              r.contains("peak_transmission");
    if (has_tables && has_analytic) {
        throw ConfigError(
            "give either the analytic keys or the s2p file pair, not both",
            "resonator");
    }
    if (has_tables) {
        if (!r.contains("s2p_ground") || !r.contains("s2p_excited")) {
            throw ConfigError("s2p_ground and s2p_excited must come together",
                              "resonator");
        }
        const std::string g =
            resolve_path(get_string(r, "resonator", "s2p_ground"), base_dir);
        const std::string e =
            resolve_path(get_string(r, "resonator", "s2p_excited"), base_dir);
        return under_key("resonator", [&] {
            return DispersivePair::from_tables(load_touchstone(g),
                                               load_touchstone(e));
        });
    }
    const double f_g = get_number(r, "resonator", "f0_ground_hz", d.f0_ground_hz);
    const double f_e =
        get_number(r, "resonator", "f0_excited_hz", d.f0_excited_hz);
    const double q = get_number(r, "resonator", "q_loaded", d.q_loaded);
    const double a =
        get_number(r, "resonator", "peak_transmission", d.peak_transmission);
    return under_key("resonator",
                     [&] { return DispersivePair::analytic(f_g, f_e, q, a); });
}

PulseSpec parse_pulse(const json& root, const DispersivePair& pair) {
    PulseSpec spec;
    // Default: drive at the midpoint of the two resonances, which is the
    // reference carrier when the resonator itself is left at its defaults.
    spec.carrier_freq_hz = pair.readout_frequency();
    spec.width_s = 3.5e-6;
    spec.generator_power_dbm = -47.0;
    if (!root.contains("pulse")) {
        return spec;
    }
    const json& p = root.at("pulse");
    require_object(p, "pulse");
    check_keys(p, "pulse", {"carrier_freq_hz", "width_s", "power_dbm"});
    spec.carrier_freq_hz =
        get_number(p, "pulse", "carrier_freq_hz", spec.carrier_freq_hz);
    spec.width_s = get_number(p, "pulse", "width_s", spec.width_s);
    spec.generator_power_dbm =
        get_number(p, "pulse", "power_dbm", spec.generator_power_dbm);
    if (!std::isfinite(spec.carrier_freq_hz) || spec.carrier_freq_hz <= 0.0) {
        throw ConfigError("must be positive", "pulse.carrier_freq_hz");
    }
    if (!std::isfinite(spec.width_s) || spec.width_s <= 0.0) {
        throw ConfigError("must be positive", "pulse.width_s");
    }
    if (!std::isfinite(spec.generator_power_dbm)) {
        throw ConfigError("must be finite", "pulse.power_dbm");
    }
    return spec;
}

NoiseSource parse_noise(const json& n, const std::string& path,
                        double preceding_gain, double carrier_freq_hz) {
    require_object(n, path);
    check_keys(n, path, {"kind", "temperature_k"});
    if (!n.contains("kind")) {
        throw ConfigError("missing", join_path(path, "kind"));
    }
    const std::string kind_name = get_string(n, path, "kind");
    NoiseKind kind;
    if (kind_name == "quantum_limited") {
        kind = NoiseKind::quantum_limited;
    } else if (kind_name == "thermal") {
        kind = NoiseKind::thermal;
    } else {
        throw ConfigError("must be 'quantum_limited' or 'thermal', got '" +
                              kind_name + "'",
                          join_path(path, "kind"));
    }
    double temperature;
    if (n.contains("temperature_k")) {
        temperature = get_number(n, path, "temperature_k", 0.0);
    } else if (kind == NoiseKind::quantum_limited) {
        // Omitted temperature on a quantum-limited source means "at the
        // quantum limit for the carrier".
        temperature = quantum_limit_temperature(carrier_freq_hz);
    } else {
        throw ConfigError("thermal sources need a temperature",
                          join_path(path, "temperature_k"));
    }
    return under_key(join_path(path, "temperature_k"), [&] {
        return make_noise_source(kind, temperature, preceding_gain);
    });
}

ChainConfig parse_chain(const json& root, DispersivePair pair,
                        double carrier_freq_hz, bool* explicit_b) {
    double attenuation_db = 76.0;
    double ref_impedance = 50.0;
    double bandwidth_factor = 3500.0;
    bool photon_noise = true;
    *explicit_b = false;

    const json* c = nullptr;
    if (root.contains("chain")) {
        c = &root.at("chain");
        require_object(*c, "chain");
        check_keys(*c, "chain",
                   {"input_attenuation_db", "ref_impedance_ohm",
                    "bandwidth_factor", "photon_noise", "amplifiers"});
        attenuation_db =
            get_number(*c, "chain", "input_attenuation_db", attenuation_db);
        ref_impedance =
            get_number(*c, "chain", "ref_impedance_ohm", ref_impedance);
        *explicit_b = c->contains("bandwidth_factor");
        bandwidth_factor =
            get_number(*c, "chain", "bandwidth_factor", bandwidth_factor);
        photon_noise = get_bool(*c, "chain", "photon_noise", photon_noise);
    }

    std::vector<NoiseSource> plane;
    if (photon_noise) {
        plane.push_back(make_noise_source(
            NoiseKind::quantum_limited,
            quantum_limit_temperature(carrier_freq_hz), 1.0));
    }

    std::vector<AmplifierStage> amps;
    if (c != nullptr && c->contains("amplifiers")) {
        const json& list = c->at("amplifiers");
        if (!list.is_array()) {
            throw ConfigError("must be an array", "chain.amplifiers");
        }
        double gain_so_far = 1.0;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path =
                "chain.amplifiers[" + std::to_string(i) + "]";
            const json& a = list.at(i);
            require_object(a, path);
            check_keys(a, path, {"name", "gain_db", "noise"});
            AmplifierStage stage;
            stage.name = a.contains("name") ? get_string(a, path, "name")
                                            : "stage" + std::to_string(i);
            if (!a.contains("gain_db")) {
                throw ConfigError("missing", join_path(path, "gain_db"));
            }
            stage.gain_db = get_number(a, path, "gain_db", 0.0);
            if (!a.contains("noise")) {
                throw ConfigError("missing", join_path(path, "noise"));
            }
            // preceding_gain is never a config key: it is fixed by the
            // stage's position in the cascade.
            stage.source = parse_noise(a.at("noise"), join_path(path, "noise"),
                                       gain_so_far, carrier_freq_hz);
            gain_so_far *= std::pow(10.0, stage.gain_db / 10.0);
            amps.push_back(std::move(stage));
        }
    } else {
        const double t_q = quantum_limit_temperature(carrier_freq_hz);
        amps.push_back({"preamp", 20.0,
                        make_noise_source(NoiseKind::quantum_limited, t_q, 1.0)});
        amps.push_back(
            {"cryo", 40.0, make_noise_source(NoiseKind::thermal, 1.5, 100.0)});
        amps.push_back(
            {"room", 40.0, make_noise_source(NoiseKind::thermal, 54.0, 1e6)});
    }

    return under_key("chain", [&] {
        return ChainConfig(attenuation_db, std::move(pair), std::move(amps),
                           std::move(plane), ref_impedance, bandwidth_factor);
    });
}

}  // namespace

RunConfig default_config() { return parse_config_text("{}"); }

RunConfig parse_config_text(const std::string& json_text,
                            const std::string& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what(), "");
    }
    require_object(root, "");
    check_keys(root, "",
               {"pulse", "resonator", "chain", "grid", "trials", "seed",
                "calibration"});

    DispersivePair pair = parse_resonator(root, base_dir);
    PulseSpec pulse = parse_pulse(root, pair);
    bool explicit_b = false;
    ChainConfig chain =
        parse_chain(root, std::move(pair), pulse.carrier_freq_hz, &explicit_b);

    GridParams grid;
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        require_object(g, "grid");
        check_keys(g, "grid", {"n", "padding"});
        grid.n = static_cast<std::size_t>(
            get_unsigned(g, "grid", "n", grid.n));
        grid.padding = get_number(g, "grid", "padding", grid.padding);
        if (grid.n < 64 || (grid.n & (grid.n - 1)) != 0) {
            throw ConfigError("must be a power of two >= 64", "grid.n");
        }
        if (!std::isfinite(grid.padding) || grid.padding < 2.0) {
            throw ConfigError("must be >= 2", "grid.padding");
        }
    }

    RunConfig cfg{pulse, std::move(chain), grid,
                  /*trials=*/1000, /*seed=*/12345, CalibrationPoint{}};
    cfg.trials = static_cast<std::size_t>(
        get_unsigned(root, "", "trials", cfg.trials));
    if (cfg.trials < 2) {
        throw ConfigError("must be at least 2", "trials");
    }
    cfg.seed = get_unsigned(root, "", "seed", cfg.seed);

    cfg.calibration.spec = cfg.pulse;
    if (root.contains("calibration")) {
        const json& cal = root.at("calibration");
        require_object(cal, "calibration");
        check_keys(cal, "calibration", {"b_value", "target_error"});
        const bool has_b = cal.contains("b_value");
        const bool has_target = cal.contains("target_error");
        if (has_b == has_target) {
            throw ConfigError("give exactly one of b_value or target_error",
                              "calibration");
        }
        if (has_b) {
            if (explicit_b) {
                throw ConfigError(
                    "sets the same quantity as chain.bandwidth_factor; "
                    "give only one of them",
                    "calibration.b_value");
            }
            const double b = get_number(cal, "calibration", "b_value", 0.0);
            if (!std::isfinite(b) || b <= 0.0) {
                throw ConfigError("must be positive", "calibration.b_value");
            }
            cfg.calibration.b_value = b;
            cfg.chain = cfg.chain.with_bandwidth_factor(b);
        } else {
            const double target =
                get_number(cal, "calibration", "target_error", 0.0);
            if (!std::isfinite(target) || target <= 0.0 || target >= 0.5) {
                throw ConfigError("must lie in (0, 0.5)",
                                  "calibration.target_error");
            }
            cfg.calibration.target_error = target;
        }
    } else {
        cfg.calibration.b_value = cfg.chain.bandwidth_factor();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path, "");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(),
                             std::filesystem::path(path).parent_path().string());
}

ChainConfig resolved_chain(const RunConfig& cfg) {
    const double b = calibrate_b(cfg.chain, cfg.calibration, cfg.grid);
    return cfg.chain.with_bandwidth_factor(b);
}

}  // namespace readout
