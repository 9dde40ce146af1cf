#pragma once

#include "readoutsim/montecarlo.hpp"

namespace readout {

// Summary statistics of a two-state I-Q ensemble. The discriminant axis is
// the line through the two blob means; sigma is the pooled per-quadrature
// standard deviation of the samples projected onto that axis (unbiased,
// n0 + n1 - 2 degrees of freedom).
struct BlobStats {
    std::complex<double> mean0;
    std::complex<double> mean1;
    double separation = 0.0;  // |mean1 - mean0|, volts
    double sigma = 0.0;       // projected pooled per-quadrature sd, volts
    double snr = 0.0;         // separation / sigma
};

// Throws DegenerateEnsemble when the means coincide and the projected
// spread is zero. A noiseless but separated ensemble gets sigma 0 and an
// infinite snr.
BlobStats blob_stats(const IQEnsemble& ensemble);

// Gaussian prediction of the symmetric single-shot error rate for two blobs
// a distance `separation` apart with per-quadrature noise `sigma`: the
// probability mass beyond the midpoint, Phi(-separation / (2 sigma)).
double analytic_error(double separation, double sigma);

// Fraction of samples landing on the wrong side of the midpoint threshold
// along the discriminant axis, averaged over both states.
double empirical_error(const IQEnsemble& ensemble);

}  // namespace readout
