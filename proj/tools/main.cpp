#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "readoutsim/readoutsim.hpp"

namespace {

// Options shared by every subcommand that runs a simulation.
struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    unsigned workers = 0;
};

void add_common_options(CLI::App* cmd, CommonOptions* opts) {
    cmd->add_option("--config", opts->config_path,
                    "JSON configuration file (defaults apply when omitted)");
    cmd->add_option("--seed", opts->seed, "override the configured seed");
    cmd->add_option("--trials", opts->trials,
                    "override the configured trial count");
    cmd->add_option("--workers", opts->workers,
                    "worker threads for the Monte Carlo loop (0 = all cores)");
}

readout::RunConfig load_run_config(const CommonOptions& opts) {
    readout::RunConfig cfg = opts.config_path.empty()
                                 ? readout::default_config()
                                 : readout::load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.trials) {
        if (*opts.trials < 2) {
            throw readout::ConfigError("must be at least 2", "trials");
        }
        cfg.trials = static_cast<std::size_t>(*opts.trials);
    }
    return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw readout::Error("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw readout::Error("failed while writing: " + path);
    }
}

// Empty path means stdout.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_file(out_path, content);
    }
}

std::vector<double> linspace(double from, double to, std::size_t steps) {
    std::vector<double> values;
    values.reserve(steps);
    if (steps == 1) {
        values.push_back(from);
        return values;
    }
    for (std::size_t i = 0; i < steps; ++i) {
        const double t =
            static_cast<double>(i) / static_cast<double>(steps - 1);
        values.push_back(from + t * (to - from));
    }
    values.back() = to;  // exact endpoint regardless of rounding
    return values;
}

void check_range(double from, double to, std::size_t steps) {
    if (steps == 0) {
        throw readout::ConfigError("must be at least 1", "steps");
    }
    if (steps > 1 && !(to > from)) {
        throw readout::ConfigError("--to must exceed --from for steps > 1",
                                   "");
    }
}

void report_knee(std::span<const readout::SweepRow> rows, double threshold) {
    try {
        const double knee = readout::knee_detect(rows, threshold);
        std::cerr << "knee: error crosses "
                  << readout::format_number(threshold) << " at "
                  << readout::format_number(knee) << "\n";
    } catch (const readout::Error& e) {
        std::cerr << "knee: " << e.what() << "\n";
    }
}

void print_operating_point(const readout::ChainConfig& chain,
                           const readout::RunConfig& cfg,
                           unsigned workers) {
    const readout::SimGrid grid(cfg.pulse.width_s, cfg.grid.n,
                                cfg.grid.padding);
    const auto ensemble = readout::run_ensemble(chain, grid, cfg.pulse,
                                                cfg.trials, cfg.seed, workers);
    const double d = readout::noiseless_separation(chain, grid, cfg.pulse);
    const double sigma = readout::measurement_noise_sigma(chain, cfg.pulse);
    const double snr = sigma > 0.0
                           ? d / sigma
                           : std::numeric_limits<double>::infinity();
    const double analytic =
        sigma > 0.0 ? readout::analytic_error(d, sigma) : 0.0;
    const double empirical = readout::empirical_error(ensemble);

    std::cout << "bandwidth_factor: "
              << readout::format_number(chain.bandwidth_factor()) << "\n"
              << "separation_volts: " << readout::format_number(d) << "\n"
              << "sigma_volts: " << readout::format_number(sigma) << "\n"
              << "snr: " << readout::format_number(snr) << "\n"
              << "analytic_error: " << readout::format_number(analytic) << "\n"
              << "empirical_error: " << readout::format_number(empirical)
              << "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{
        "Dispersive-readout error simulator: resonator, amplifier chain, "
        "and Monte Carlo I-Q measurement"};
    app.require_subcommand(1);

    CommonOptions common;

    auto* simulate = app.add_subcommand(
        "simulate", "evaluate the configured operating point");
    add_common_options(simulate, &common);

    auto* sweep_width = app.add_subcommand(
        "sweep-width", "error versus readout pulse width");
    add_common_options(sweep_width, &common);
    double width_from = 1e-6;
    double width_to = 5e-6;
    std::size_t width_steps = 9;
    std::string width_out;
    std::string width_plot;
    double width_threshold = 1e-2;
    sweep_width->add_option("--from", width_from, "first pulse width, s");
    sweep_width->add_option("--to", width_to, "last pulse width, s");
    sweep_width->add_option("--steps", width_steps, "number of sweep points");
    sweep_width->add_option("--out", width_out, "CSV output file (default stdout)");
    sweep_width->add_option("--plot", width_plot, "SVG plot output file");
    sweep_width->add_option("--threshold", width_threshold,
                            "error threshold for the knee report");

    auto* sweep_power = app.add_subcommand(
        "sweep-power", "error versus generator power offset");
    add_common_options(sweep_power, &common);
    double power_from = -10.0;
    double power_to = 0.0;
    std::size_t power_steps = 11;
    std::string power_out;
    std::string power_plot;
    double power_threshold = 1e-2;
    sweep_power->add_option("--from", power_from,
                            "first power offset, dB relative to the config");
    sweep_power->add_option("--to", power_to, "last power offset, dB");
    sweep_power->add_option("--steps", power_steps, "number of sweep points");
    sweep_power->add_option("--out", power_out, "CSV output file (default stdout)");
    sweep_power->add_option("--plot", power_plot, "SVG plot output file");
    sweep_power->add_option("--threshold", power_threshold,
                            "error threshold for the knee report");

    auto* calibrate = app.add_subcommand(
        "calibrate", "resolve the bandwidth factor and print it");
    add_common_options(calibrate, &common);

    auto* parse_s2p = app.add_subcommand(
        "parse-s2p", "inspect a Touchstone .s2p file");
    std::string s2p_file;
    std::string s2p_out;
    parse_s2p->add_option("file", s2p_file, "Touchstone file to read")
        ->required();
    parse_s2p->add_option("--out", s2p_out,
                          "rewrite the table in canonical RI form");

    auto* iq_dump = app.add_subcommand(
        "iq-dump", "write the Monte Carlo I-Q samples as CSV");
    add_common_options(iq_dump, &common);
    std::string iq_out;
    std::string iq_plot;
    iq_dump->add_option("--out", iq_out, "CSV output file (default stdout)");
    iq_dump->add_option("--plot", iq_plot, "SVG scatter output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    if (simulate->parsed()) {
        const auto cfg = load_run_config(common);
        print_operating_point(readout::resolved_chain(cfg), cfg,
                              common.workers);
    } else if (sweep_width->parsed()) {
        check_range(width_from, width_to, width_steps);
        const auto cfg = load_run_config(common);
        const auto chain = readout::resolved_chain(cfg);
        const auto widths = linspace(width_from, width_to, width_steps);
        const auto rows = readout::sweep_pulse_width(
            chain, cfg.pulse, widths, cfg.trials, cfg.seed, cfg.grid,
            common.workers);
        emit(width_out, readout::sweep_csv(rows));
        if (!width_plot.empty()) {
            write_text_file(width_plot,
                            readout::sweep_svg(rows, "Error vs pulse width",
                                               "pulse width (s)"));
        }
        report_knee(rows, width_threshold);
    } else if (sweep_power->parsed()) {
        check_range(power_from, power_to, power_steps);
        const auto cfg = load_run_config(common);
        const auto chain = readout::resolved_chain(cfg);
        const auto offsets = linspace(power_from, power_to, power_steps);
        const auto rows = readout::sweep_power(chain, cfg.pulse, offsets,
                                               cfg.trials, cfg.seed, cfg.grid,
                                               common.workers);
        emit(power_out, readout::sweep_csv(rows));
        if (!power_plot.empty()) {
            write_text_file(power_plot,
                            readout::sweep_svg(rows, "Error vs power offset",
                                               "power offset (dB)"));
        }
        report_knee(rows, power_threshold);
    } else if (calibrate->parsed()) {
        const auto cfg = load_run_config(common);
        const double b =
            readout::calibrate_b(cfg.chain, cfg.calibration, cfg.grid);
        std::cout << "bandwidth_factor: " << readout::format_number(b) << "\n";
    } else if (parse_s2p->parsed()) {
        const auto table = readout::load_touchstone(s2p_file);
        const double peak = table.peak_s21_freq();
        double peak_abs = 0.0;
        for (const auto& p : table.points()) {
            peak_abs = std::max(peak_abs, std::abs(p.s21));
        }
        std::cout << "points: " << table.size() << "\n"
                  << "freq_range_hz: " << readout::format_number(table.min_freq())
                  << " " << readout::format_number(table.max_freq()) << "\n"
                  << "peak_freq_hz: " << readout::format_number(peak) << "\n"
                  << "peak_s21_abs: " << readout::format_number(peak_abs)
                  << "\n";
        if (!s2p_out.empty()) {
            write_text_file(s2p_out, readout::to_touchstone_ri(table));
        }
    } else if (iq_dump->parsed()) {
        const auto cfg = load_run_config(common);
        const auto chain = readout::resolved_chain(cfg);
        const readout::SimGrid grid(cfg.pulse.width_s, cfg.grid.n,
                                    cfg.grid.padding);
        const auto ensemble = readout::run_ensemble(
            chain, grid, cfg.pulse, cfg.trials, cfg.seed, common.workers);
        emit(iq_out, readout::iq_csv(ensemble));
        if (!iq_plot.empty()) {
            write_text_file(iq_plot,
                            readout::iq_scatter_svg(ensemble,
                                                    "I-Q readout blobs"));
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const readout::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
