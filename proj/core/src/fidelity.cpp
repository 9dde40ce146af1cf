#include "readoutsim/fidelity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "readoutsim/errors.hpp"

namespace readout {

namespace {

std::complex<double> mean_of(const std::vector<std::complex<double>>& v) {
    std::complex<double> sum;
    for (const auto& z : v) sum += z;
    return sum / static_cast<double>(v.size());
}

// Unit vector along mean1 - mean0; falls back to the I axis when the means
// coincide (the projection is then an arbitrary but fixed choice).
std::complex<double> discriminant_axis(const std::complex<double>& mean0,
                                       const std::complex<double>& mean1) {
    const std::complex<double> diff = mean1 - mean0;
    const double d = std::abs(diff);
    return d > 0.0 ? diff / d : std::complex<double>(1.0, 0.0);
}

double project(const std::complex<double>& z, const std::complex<double>& axis) {
    return z.real() * axis.real() + z.imag() * axis.imag();
}

double projected_sum_sq(const std::vector<std::complex<double>>& samples,
                        const std::complex<double>& mean,
                        const std::complex<double>& axis) {
    double ss = 0.0;
    for (const auto& z : samples) {
        const double dev = project(z - mean, axis);
        ss += dev * dev;
    }
    return ss;
}

void check_sizes(const IQEnsemble& e) {
    if (e.state0.size() < 2 || e.state1.size() < 2) {
        throw InvalidArgument("ensemble needs at least 2 samples per state");
    }
}

}  // namespace

BlobStats blob_stats(const IQEnsemble& ensemble) {
    check_sizes(ensemble);
    BlobStats stats;
    stats.mean0 = mean_of(ensemble.state0);
    stats.mean1 = mean_of(ensemble.state1);
    stats.separation = std::abs(stats.mean1 - stats.mean0);

    const std::complex<double> axis =
        discriminant_axis(stats.mean0, stats.mean1);
    // Summed per state before pooling, so swapping the state labels cannot
    // change the rounding order of the accumulation.
    const double ss =
        projected_sum_sq(ensemble.state0, stats.mean0, axis) +
        projected_sum_sq(ensemble.state1, stats.mean1, axis);
    const auto dof = static_cast<double>(ensemble.state0.size() +
                                         ensemble.state1.size() - 2);
    stats.sigma = std::sqrt(ss / dof);

    if (stats.separation == 0.0 && stats.sigma == 0.0) {
        throw DegenerateEnsemble(
            "both blobs collapse onto one point; separation and noise are "
            "undefined");
    }
    stats.snr = stats.sigma > 0.0
                     ? stats.separation / stats.sigma
                     : std::numeric_limits<double>::infinity();
    return stats;
}

double analytic_error(double separation, double sigma) {
    if (!std::isfinite(separation) || separation < 0.0) {
        throw InvalidArgument("separation must be non-negative, got " +
                              std::to_string(separation));
    }
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw InvalidArgument("sigma must be positive, got " +
                              std::to_string(sigma));
    }
    // Phi(-d / 2 sigma) = erfc(d / (2 sqrt(2) sigma)) / 2.
    return 0.5 * std::erfc(separation /
                           (2.0 * std::numbers::sqrt2 * sigma));
}

double empirical_error(const IQEnsemble& ensemble) {
    const BlobStats stats = blob_stats(ensemble);
    const std::complex<double> axis =
        discriminant_axis(stats.mean0, stats.mean1);
    const std::complex<double> midpoint = (stats.mean0 + stats.mean1) / 2.0;
    // Classify by the side of the midpoint along the axis; exactly on the
    // threshold counts as state 0.
    std::size_t wrong = 0;
    for (const auto& z : ensemble.state0) {
        if (project(z - midpoint, axis) > 0.0) ++wrong;
    }
    for (const auto& z : ensemble.state1) {
        if (!(project(z - midpoint, axis) > 0.0)) ++wrong;
    }
    const auto total = static_cast<double>(ensemble.state0.size() +
                                           ensemble.state1.size());
    return static_cast<double>(wrong) / total;
}

}  // namespace readout
