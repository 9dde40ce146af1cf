#include "readoutsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "readoutsim/errors.hpp"

namespace readout {

namespace {

SweepRow evaluate_point(const ChainConfig& cfg, const SimGrid& grid,
                        const PulseSpec& spec, double parameter,
                        std::size_t n_trials, std::uint64_t row_seed,
                        unsigned n_workers) {
    SweepRow row;
    row.parameter = parameter;
    row.d_volts = noiseless_separation(cfg, grid, spec);
    row.sigma_volts = measurement_noise_sigma(cfg, spec);
    row.snr = row.sigma_volts > 0.0
                  ? row.d_volts / row.sigma_volts
                  : std::numeric_limits<double>::infinity();
    row.analytic_error = row.sigma_volts > 0.0
                             ? analytic_error(row.d_volts, row.sigma_volts)
                             : 0.0;
    const IQEnsemble ensemble =
        run_ensemble(cfg, grid, spec, n_trials, row_seed, n_workers);
    row.empirical_error = empirical_error(ensemble);
    return row;
}

void check_ascending(std::span<const double> values, const char* what) {
    if (values.empty()) {
        throw InvalidArgument(std::string(what) + " list is empty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidArgument(std::string(what) + " values must be finite");
        }
        if (i > 0 && values[i] <= values[i - 1]) {
            throw InvalidArgument(std::string(what) +
                                  " values must be strictly ascending");
        }
    }
}

}  // namespace

double noiseless_separation(const ChainConfig& cfg, const SimGrid& grid,
                            const PulseSpec& spec) {
    const std::complex<double> b0 =
        spectrum_at(propagate(cfg, grid, spec, 0), spec.carrier_freq_hz);
    const std::complex<double> b1 =
        spectrum_at(propagate(cfg, grid, spec, 1), spec.carrier_freq_hz);
    return std::abs(b1 - b0);
}

double calibrate_b(const ChainConfig& cfg, const CalibrationPoint& point,
                   const GridParams& grid) {
    if (point.b_value.has_value() == point.target_error.has_value()) {
        throw InvalidArgument(
            "calibration needs exactly one of b_value or target_error");
    }
    if (point.b_value) {
        const double b = *point.b_value;
        if (!std::isfinite(b) || b <= 0.0) {
            throw InvalidArgument("bandwidth factor must be positive, got " +
                                  std::to_string(b));
        }
        return b;
    }

    const double target = *point.target_error;
    if (!std::isfinite(target) || target <= 0.0 || target >= 0.5) {
        throw InvalidArgument("target error must lie in (0, 0.5), got " +
                              std::to_string(target));
    }
    validate_pulse_spec(point.spec);
    const SimGrid sim_grid(point.spec.width_s, grid.n, grid.padding);
    const double d = noiseless_separation(cfg, sim_grid, point.spec);
    const double t_p = point.spec.width_s;

    const auto error_at = [&](double b) {
        const double bin_variance = measurement_bin_variance(
            cfg.with_bandwidth_factor(b), point.spec);
        const double sigma = std::sqrt(bin_variance / 2.0);
        return sigma > 0.0 ? analytic_error(d, sigma) : 0.0;
    };

    // The error grows monotonically with B, from ~0 (vanishing noise) toward
    // 0.5 (noise drowns the separation). The bracket is deliberately much
    // wider than any plausible B so that the search also covers conventions
    // where the calibrated value lands below 1.
    double lo = 1e-12;
    double hi = 1e12;
    const double err_lo = error_at(lo);
    const double err_hi = error_at(hi);
    if (!(err_lo <= target && target <= err_hi)) {
        throw CalibrationInfeasible(
            "no bandwidth factor reaches target error " +
            std::to_string(target) + ": error spans [" +
            std::to_string(err_lo) + ", " + std::to_string(err_hi) +
            "] over B in [1e-12, 1e12] (separation " + std::to_string(d) +
            " V, pulse width " + std::to_string(t_p) + " s)");
    }
    // Bisection on log B: ~80 halvings shrink the 24-decade bracket far
    // below any rounding that could matter.
    for (int iter = 0; iter < 200 && hi / lo > 1.0 + 1e-12; ++iter) {
        const double mid = std::sqrt(lo * hi);
        if (error_at(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

std::vector<SweepRow> sweep_pulse_width(const ChainConfig& cfg,
                                        const PulseSpec& base,
                                        std::span<const double> widths_s,
                                        std::size_t n_trials,
                                        std::uint64_t seed,
                                        const GridParams& grid,
                                        unsigned n_workers) {
    check_ascending(widths_s, "pulse width");
    if (widths_s.front() <= 0.0) {
        throw InvalidArgument("pulse widths must be positive");
    }
    std::vector<SweepRow> rows;
    rows.reserve(widths_s.size());
    for (std::size_t i = 0; i < widths_s.size(); ++i) {
        PulseSpec spec = base;
        spec.width_s = widths_s[i];
        const SimGrid sim_grid(spec.width_s, grid.n, grid.padding);
        rows.push_back(evaluate_point(cfg, sim_grid, spec, widths_s[i],
                                      n_trials, derive_seed(seed, i),
                                      n_workers));
    }
    return rows;
}

std::vector<SweepRow> sweep_power(const ChainConfig& cfg,
                                  const PulseSpec& base,
                                  std::span<const double> rel_powers_db,
                                  std::size_t n_trials, std::uint64_t seed,
                                  const GridParams& grid, unsigned n_workers) {
    check_ascending(rel_powers_db, "power offset");
    validate_pulse_spec(base);
    const SimGrid sim_grid(base.width_s, grid.n, grid.padding);
    std::vector<SweepRow> rows;
    rows.reserve(rel_powers_db.size());
    for (std::size_t i = 0; i < rel_powers_db.size(); ++i) {
        PulseSpec spec = base;
        spec.generator_power_dbm = base.generator_power_dbm + rel_powers_db[i];
        rows.push_back(evaluate_point(cfg, sim_grid, spec, rel_powers_db[i],
                                      n_trials, derive_seed(seed, i),
                                      n_workers));
    }
    return rows;
}

double knee_detect(std::span<const SweepRow> rows, double threshold) {
    if (rows.size() < 2) {
        throw InvalidArgument("knee detection needs at least two rows");
    }
    if (!std::isfinite(threshold) || threshold <= 0.0) {
        throw InvalidArgument("knee threshold must be positive, got " +
                              std::to_string(threshold));
    }
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].analytic_error > rows[i - 1].analytic_error) decreasing = false;
        if (rows[i].analytic_error < rows[i - 1].analytic_error) increasing = false;
    }
    if (!increasing && !decreasing) {
        throw InvalidArgument(
            "analytic errors must be monotone across the sweep for knee "
            "detection");
    }
    for (const SweepRow& row : rows) {
        if (row.analytic_error <= 0.0) {
            throw InvalidArgument(
                "knee detection needs positive analytic errors");
        }
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double e0 = rows[i].analytic_error;
        const double e1 = rows[i + 1].analytic_error;
        if ((e0 - threshold) * (e1 - threshold) <= 0.0) {
            if (e0 == e1) return rows[i].parameter;  // flat at the threshold
            const double t = (std::log(threshold) - std::log(e0)) /
                             (std::log(e1) - std::log(e0));
            return rows[i].parameter +
                   t * (rows[i + 1].parameter - rows[i].parameter);
        }
    }
    const auto [lo, hi] = std::minmax_element(
        rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
            return a.analytic_error < b.analytic_error;
        });
    throw KneeNotBracketed(
        "threshold " + std::to_string(threshold) +
        " is outside the swept error range [" +
        std::to_string(lo->analytic_error) + ", " +
        std::to_string(hi->analytic_error) + "]");
}

}  // namespace readout
