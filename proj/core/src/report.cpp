#include "readoutsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "readoutsim/errors.hpp"

namespace readout {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string px(double v) { return fmt("%.2f", v); }
std::string tick_label(double v) { return fmt("%.4g", v); }

// Affine map from data coordinates to pixel coordinates.
struct Scale {
    double d0, d1, p0, p1;
    double operator()(double d) const {
        return p0 + (d - d0) / (d1 - d0) * (p1 - p0);
    }
};

constexpr double kWidth = 720, kHeight = 540;
constexpr double kLeft = 90, kRight = 690, kTop = 50, kBottom = 470;

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << (kWidth / 2)
        << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"17\">"
        << title << "</text>\n";
}

void axes_frame(std::ostringstream& out) {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << (kRight - kLeft) << "\" height=\"" << (kBottom - kTop)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void x_axis(std::ostringstream& out, const Scale& sx,
            const std::vector<double>& ticks, const std::string& label) {
    for (double t : ticks) {
        const double x = sx(t);
        out << "<line x1=\"" << px(x) << "\" y1=\"" << kTop << "\" x2=\""
            << px(x) << "\" y2=\"" << kBottom
            << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << px(x) << "\" y=\"" << (kBottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << tick_label(t) << "</text>\n";
    }
    out << "<text x=\"" << ((kLeft + kRight) / 2) << "\" y=\""
        << (kBottom + 48)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">"
        << label << "</text>\n";
}

void y_axis(std::ostringstream& out, const Scale& sy,
            const std::vector<double>& ticks,
            const std::vector<std::string>& labels, const std::string& label) {
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        const double y = sy(ticks[i]);
        out << "<line x1=\"" << kLeft << "\" y1=\"" << px(y) << "\" x2=\""
            << kRight << "\" y2=\"" << px(y) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << (kLeft - 8) << "\" y=\"" << px(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << labels[i] << "</text>\n";
    }
    out << "<text x=\"24\" y=\"" << ((kTop + kBottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\" transform=\"rotate(-90 24 "
        << ((kTop + kBottom) / 2) << ")\">" << label << "</text>\n";
}

std::vector<double> linear_ticks(double lo, double hi, int count) {
    std::vector<double> ticks;
    for (int i = 0; i < count; ++i) {
        ticks.push_back(lo + (hi - lo) * i / (count - 1));
    }
    return ticks;
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", value);
    return buf;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << "parameter,d_volts,sigma_volts,snr,analytic_error,empirical_error\n";
    for (const SweepRow& r : rows) {
        out << format_number(r.parameter) << ',' << format_number(r.d_volts)
            << ',' << format_number(r.sigma_volts) << ','
            << format_number(r.snr) << ',' << format_number(r.analytic_error)
            << ',' << format_number(r.empirical_error) << '\n';
    }
    return out.str();
}

std::string iq_csv(const IQEnsemble& ensemble) {
    std::ostringstream out;
    out << "state,trial,i_volts,q_volts\n";
    for (int state : {0, 1}) {
        const auto& samples = ensemble.samples(state);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            out << state << ',' << i << ',' << format_number(samples[i].real())
                << ',' << format_number(samples[i].imag()) << '\n';
        }
    }
    return out.str();
}

std::string sweep_svg(std::span<const SweepRow> rows, const std::string& title,
                      const std::string& x_label) {
    if (rows.empty()) {
        throw InvalidArgument("cannot plot an empty sweep");
    }
    double x_lo = rows.front().parameter, x_hi = rows.front().parameter;
    double log_lo = 300.0, log_hi = -300.0;
    bool have_error = false;
    for (const SweepRow& r : rows) {
        x_lo = std::min(x_lo, r.parameter);
        x_hi = std::max(x_hi, r.parameter);
        for (double e : {r.analytic_error, r.empirical_error}) {
            if (e > 0.0) {
                log_lo = std::min(log_lo, std::log10(e));
                log_hi = std::max(log_hi, std::log10(e));
                have_error = true;
            }
        }
    }
    if (!have_error) {
        throw InvalidArgument("cannot plot a sweep with no positive errors");
    }
    if (x_hi == x_lo) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    const double pad = 0.04 * (x_hi - x_lo);
    const Scale sx{x_lo - pad, x_hi + pad, kLeft, kRight};
    const double dec_lo = std::floor(log_lo);
    const double dec_hi = std::ceil(log_hi);
    const Scale sy{dec_lo, dec_hi == dec_lo ? dec_lo + 1 : dec_hi, kBottom,
                   kTop};

    std::ostringstream out;
    open_svg(out, title);
    std::vector<double> y_ticks;
    std::vector<std::string> y_labels;
    for (double d = dec_lo; d <= sy.d1; d += 1.0) {
        y_ticks.push_back(d);
        y_labels.push_back(fmt("1e%.0f", d));
    }
    y_axis(out, sy, y_ticks, y_labels, "readout error");
    x_axis(out, sx, linear_ticks(x_lo, x_hi, 5), x_label);
    axes_frame(out);

    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
           "points=\"";
    for (const SweepRow& r : rows) {
        if (r.analytic_error > 0.0) {
            out << px(sx(r.parameter)) << ','
                << px(sy(std::log10(r.analytic_error))) << ' ';
        }
    }
    out << "\"/>\n";
    for (const SweepRow& r : rows) {
        if (r.empirical_error > 0.0) {
            out << "<circle cx=\"" << px(sx(r.parameter)) << "\" cy=\""
                << px(sy(std::log10(r.empirical_error)))
                << "\" r=\"4\" fill=\"#ff7f0e\"/>\n";
        }
    }
    out << "<rect x=\"" << (kRight - 150) << "\" y=\"" << (kTop + 10)
        << "\" width=\"140\" height=\"44\" fill=\"white\" "
           "stroke=\"#999999\"/>\n"
        << "<line x1=\"" << (kRight - 140) << "\" y1=\"" << (kTop + 24)
        << "\" x2=\"" << (kRight - 112) << "\" y2=\"" << (kTop + 24)
        << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << (kRight - 104) << "\" y=\"" << (kTop + 28)
        << "\" font-family=\"sans-serif\" font-size=\"12\">analytic</text>\n"
        << "<circle cx=\"" << (kRight - 126) << "\" cy=\"" << (kTop + 42)
        << "\" r=\"4\" fill=\"#ff7f0e\"/>\n"
        << "<text x=\"" << (kRight - 104) << "\" y=\"" << (kTop + 46)
        << "\" font-family=\"sans-serif\" font-size=\"12\">empirical</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string iq_scatter_svg(const IQEnsemble& ensemble,
                           const std::string& title) {
    if (ensemble.state0.empty() || ensemble.state1.empty()) {
        throw InvalidArgument("cannot plot an empty ensemble");
    }
    double i_lo = ensemble.state0.front().real();
    double i_hi = i_lo;
    double q_lo = ensemble.state0.front().imag();
    double q_hi = q_lo;
    for (const auto* samples : {&ensemble.state0, &ensemble.state1}) {
        for (const auto& z : *samples) {
            i_lo = std::min(i_lo, z.real());
            i_hi = std::max(i_hi, z.real());
            q_lo = std::min(q_lo, z.imag());
            q_hi = std::max(q_hi, z.imag());
        }
    }
    const auto widen = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span == 0.0) span = std::max(std::abs(hi), 1e-12);
        lo -= 0.08 * span;
        hi += 0.08 * span;
    };
    widen(i_lo, i_hi);
    widen(q_lo, q_hi);
    const Scale sx{i_lo, i_hi, kLeft, kRight};
    const Scale sy{q_lo, q_hi, kBottom, kTop};

    std::ostringstream out;
    open_svg(out, title);
    std::vector<double> x_ticks = linear_ticks(i_lo, i_hi, 5);
    std::vector<double> y_ticks = linear_ticks(q_lo, q_hi, 5);
    std::vector<std::string> y_labels;
    for (double t : y_ticks) y_labels.push_back(tick_label(t));
    y_axis(out, sy, y_ticks, y_labels, "Q (V)");
    x_axis(out, sx, x_ticks, "I (V)");
    axes_frame(out);

    const char* colors[2] = {"#1f77b4", "#ff7f0e"};
    for (int state : {0, 1}) {
        for (const auto& z : ensemble.samples(state)) {
            out << "<circle cx=\"" << px(sx(z.real())) << "\" cy=\""
                << px(sy(z.imag())) << "\" r=\"2.5\" fill=\"" << colors[state]
                << "\" fill-opacity=\"0.6\"/>\n";
        }
    }
    out << "<rect x=\"" << (kRight - 150) << "\" y=\"" << (kTop + 10)
        << "\" width=\"140\" height=\"44\" fill=\"white\" "
           "stroke=\"#999999\"/>\n";
    const char* names[2] = {"state 0", "state 1"};
    for (int state : {0, 1}) {
        const double y = kTop + 24 + 18 * state;
        out << "<circle cx=\"" << (kRight - 130) << "\" cy=\"" << y
            << "\" r=\"4\" fill=\"" << colors[state] << "\"/>\n"
            << "<text x=\"" << (kRight - 116) << "\" y=\"" << (y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << names[state] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace readout
