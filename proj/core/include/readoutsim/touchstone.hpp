#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace readout {

// One frequency point of a two-port S-parameter set.
struct TwoPortPoint {
    double freq_hz = 0.0;
    std::complex<double> s11;
    std::complex<double> s21;
    std::complex<double> s12;
    std::complex<double> s22;
};

// Immutable two-port S-parameter table with strictly increasing frequencies.
class TwoPortTable {
public:
    // Takes ownership of the points; validates ordering and ref_impedance.
    explicit TwoPortTable(std::vector<TwoPortPoint> points,
                          double ref_impedance_ohm = 50.0);

    const std::vector<TwoPortPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double ref_impedance() const noexcept { return ref_impedance_; }
    double min_freq() const noexcept { return points_.front().freq_hz; }
    double max_freq() const noexcept { return points_.back().freq_hz; }

    // S21 linearly interpolated between grid points (real and imaginary
    // parts separately); exact on grid points. Requires at least two points
    // and min_freq() <= freq_hz <= max_freq(); never extrapolates.
    std::complex<double> interpolate_s21(double freq_hz) const;

    // Frequency of the grid sample with the largest |S21| (first one wins on
    // exact ties).
    double peak_s21_freq() const;

private:
    std::vector<TwoPortPoint> points_;
    double ref_impedance_;
};

// Parse Touchstone version 1 two-port data (.s2p).
//
// Accepted grammar:
//   - '!' starts a comment anywhere on a line; blank lines are ignored
//   - exactly one option line "# <unit> S <format> R <ohms>" with
//     unit in {HZ, KHZ, MHZ, GHZ} and format in {RI, MA, DB}
//     (keywords case-insensitive), appearing before any data
//   - data rows of exactly 9 numbers: f S11 S21 S12 S22 (S21 before S12),
//     each S value as (re, im) for RI, (mag, angle_deg) for MA, or
//     (dB, angle_deg) for DB
//
// Y/Z/G/H parameter files and Touchstone version 2 files are rejected with
// UnsupportedFeature; structural problems throw FormatError and bad data
// rows throw DataError, both carrying the offending line number.
TwoPortTable parse_touchstone(std::istream& in);
TwoPortTable parse_touchstone(std::string_view text);
TwoPortTable load_touchstone(const std::string& path);

// Serialize as "# HZ S RI R <ohms>" plus one row per point, with enough
// digits that parsing the output reproduces the table exactly.
void write_touchstone_ri(const TwoPortTable& table, std::ostream& out);
std::string to_touchstone_ri(const TwoPortTable& table);

}  // namespace readout
