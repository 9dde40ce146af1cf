#include "readoutsim/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "readoutsim/errors.hpp"

namespace readout {

namespace {

std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

double parse_number(const std::string& tok, std::size_t line_no) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(tok, &consumed);
    } catch (const std::exception&) {
        throw DataError("not a number: '" + tok + "'", line_no);
    }
    if (consumed != tok.size()) {
        throw DataError("not a number: '" + tok + "'", line_no);
    }
    return value;
}

enum class SFormat { ri, ma, db };

std::complex<double> make_s(SFormat fmt, double a, double b) {
    switch (fmt) {
        case SFormat::ri:
            return {a, b};
        case SFormat::ma:
            return std::polar(a, b * std::numbers::pi / 180.0);
        case SFormat::db:
            return std::polar(std::pow(10.0, a / 20.0),
                              b * std::numbers::pi / 180.0);
    }
    return {};  // unreachable
}

}  // namespace

TwoPortTable::TwoPortTable(std::vector<TwoPortPoint> points,
                           double ref_impedance_ohm)
    : points_(std::move(points)), ref_impedance_(ref_impedance_ohm) {
    if (points_.empty()) {
        throw InvalidArgument("two-port table must contain at least one point");
    }
    if (!std::isfinite(ref_impedance_) || ref_impedance_ <= 0.0) {
        throw InvalidArgument("reference impedance must be positive, got " +
                              std::to_string(ref_impedance_));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].freq_hz) || points_[i].freq_hz <= 0.0) {
            throw InvalidArgument("table frequencies must be positive");
        }
        if (i > 0 && points_[i].freq_hz <= points_[i - 1].freq_hz) {
            throw InvalidArgument("table frequencies must be strictly increasing");
        }
    }
}

std::complex<double> TwoPortTable::interpolate_s21(double freq_hz) const {
    if (points_.size() < 2) {
        throw InvalidArgument("interpolation requires at least two points");
    }
    if (!(freq_hz >= min_freq() && freq_hz <= max_freq())) {
        throw RangeError("frequency " + std::to_string(freq_hz) +
                         " Hz outside table span [" + std::to_string(min_freq()) +
                         ", " + std::to_string(max_freq()) + "] Hz");
    }
    // Index of the first point with freq >= freq_hz.
    const auto it = std::lower_bound(
        points_.begin(), points_.end(), freq_hz,
        [](const TwoPortPoint& p, double f) { return p.freq_hz < f; });
    if (it->freq_hz == freq_hz) return it->s21;
    const TwoPortPoint& hi = *it;
    const TwoPortPoint& lo = *(it - 1);
    const double t = (freq_hz - lo.freq_hz) / (hi.freq_hz - lo.freq_hz);
    return {lo.s21.real() + t * (hi.s21.real() - lo.s21.real()),
            lo.s21.imag() + t * (hi.s21.imag() - lo.s21.imag())};
}

double TwoPortTable::peak_s21_freq() const {
    const auto it = std::max_element(
        points_.begin(), points_.end(),
        [](const TwoPortPoint& a, const TwoPortPoint& b) {
            return std::abs(a.s21) < std::abs(b.s21);
        });
    return it->freq_hz;
}

TwoPortTable parse_touchstone(std::istream& in) {
    bool have_option = false;
    double freq_scale = 1.0;
    double ref_impedance = 50.0;
    SFormat format = SFormat::ri;
    std::vector<TwoPortPoint> points;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        // Strip comments ('!' to end of line), then skip blank lines.
        if (const auto bang = raw.find('!'); bang != std::string::npos) {
            raw.erase(bang);
        }
        std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty()) continue;

        if (tokens[0][0] == '[') {
            throw UnsupportedFeature(
                "Touchstone version 2 keyword '" + tokens[0] + "' on line " +
                std::to_string(line_no) + "; only version 1 files are supported");
        }

        if (tokens[0][0] == '#') {
            if (have_option) {
                throw FormatError("duplicate option line", line_no);
            }
            // Allow both "#unit ..." and "# unit ...".
            if (tokens[0].size() > 1) {
                tokens[0].erase(0, 1);
            } else {
                tokens.erase(tokens.begin());
            }
            if (tokens.size() != 5) {
                throw FormatError(
                    "option line must read '# <unit> S <format> R <ohms>'",
                    line_no);
            }
            const std::string unit = to_upper(tokens[0]);
            if (unit == "HZ") {
                freq_scale = 1.0;
            } else if (unit == "KHZ") {
                freq_scale = 1e3;
            } else if (unit == "MHZ") {
                freq_scale = 1e6;
            } else if (unit == "GHZ") {
                freq_scale = 1e9;
            } else {
                throw FormatError("unknown frequency unit '" + tokens[0] + "'",
                                  line_no);
            }
            const std::string param = to_upper(tokens[1]);
            if (param == "Y" || param == "Z" || param == "G" || param == "H") {
                throw UnsupportedFeature(
                    param + "-parameter files are not supported (line " +
                    std::to_string(line_no) + "); only S-parameters are");
            }
            if (param != "S") {
                throw FormatError("unknown parameter type '" + tokens[1] + "'",
                                  line_no);
            }
            const std::string fmt = to_upper(tokens[2]);
            if (fmt == "RI") {
                format = SFormat::ri;
            } else if (fmt == "MA") {
                format = SFormat::ma;
            } else if (fmt == "DB") {
                format = SFormat::db;
            } else {
                throw FormatError("unknown data format '" + tokens[2] + "'",
                                  line_no);
            }
            if (to_upper(tokens[3]) != "R") {
                throw FormatError("expected 'R' before the reference impedance",
                                  line_no);
            }
            ref_impedance = parse_number(tokens[4], line_no);
            if (!std::isfinite(ref_impedance) || ref_impedance <= 0.0) {
                throw FormatError("reference impedance must be positive",
                                  line_no);
            }
            have_option = true;
            continue;
        }

        // Data row.
        if (!have_option) {
            throw FormatError("data before the '#' option line", line_no);
        }
        if (tokens.size() != 9) {
            throw DataError("expected 9 columns (f and four S pairs), got " +
                            std::to_string(tokens.size()),
                            line_no);
        }
        double v[9];
        for (std::size_t i = 0; i < 9; ++i) v[i] = parse_number(tokens[i], line_no);

        TwoPortPoint p;
        p.freq_hz = v[0] * freq_scale;
        p.s11 = make_s(format, v[1], v[2]);
        p.s21 = make_s(format, v[3], v[4]);
        p.s12 = make_s(format, v[5], v[6]);
        p.s22 = make_s(format, v[7], v[8]);
        if (!points.empty() && p.freq_hz <= points.back().freq_hz) {
            throw DataError("frequencies must be strictly increasing", line_no);
        }
        points.push_back(p);
    }

    if (!have_option) {
        throw FormatError("missing '#' option line", line_no);
    }
    if (points.empty()) {
        throw DataError("no data rows", line_no);
    }
    return TwoPortTable(std::move(points), ref_impedance);
}

TwoPortTable parse_touchstone(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_touchstone(in);
}

TwoPortTable load_touchstone(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open Touchstone file: " + path);
    }
    return parse_touchstone(in);
}

void write_touchstone_ri(const TwoPortTable& table, std::ostream& out) {
    char buf[32];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "# HZ S RI R " << num(table.ref_impedance()) << "\n";
    for (const TwoPortPoint& p : table.points()) {
        out << num(p.freq_hz);
        for (const auto* s : {&p.s11, &p.s21, &p.s12, &p.s22}) {
            out << ' ' << num(s->real()) << ' ' << num(s->imag());
        }
        out << "\n";
    }
}

std::string to_touchstone_ri(const TwoPortTable& table) {
    std::ostringstream out;
    write_touchstone_ri(table, out);
    return out.str();
}

}  // namespace readout
