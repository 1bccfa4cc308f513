#pragma once

#include "bisim/grid.hpp"
#include "bisim/medium.hpp"

#include <optional>
#include <vector>

namespace bisim {

// Nonlinear parametric coupling with the anti-Stokes detuning as argument.
complex kappa(double omega, const MediumParams& m, const DriveParams& d);

ComplexSpectrum kappa_spectrum(const UniformAxis& grid, const MediumParams& m,
                               const DriveParams& d);

// psi(tau) = (L / 2 pi) integral kappa Phi exp(-i w tau) dw on the half-sample
// delay grid. Throws GridTooNarrow when |F|^2 at the spectral edges exceeds
// 1e-6 of its peak and AliasingDetected when more than 1e-4 of the energy
// sits within three samples of either delay boundary.
Waveform psi_from_spectrum(const ComplexSpectrum& kappa_phi, double length);

// psi at one delay by direct quadrature over the spectral grid.
complex psi_at(const ComplexSpectrum& kappa_phi, double length, double tau);

// Delay-domain kernels: kappa~ on the half-sample grid, Phi~ on the grid that
// contains tau = 0.
Waveform kappa_kernel(const ComplexSpectrum& kappa);
Waveform phi_kernel(const ComplexSpectrum& phi);

// psi = L (kappa~ * Phi~) by direct summation.
Waveform psi_by_convolution(const Waveform& kappa_t, const Waveform& phi_t, double length);

std::vector<double> g2(const Waveform& w);

double pair_rate(const ComplexSpectrum& kappa_phi, double length);
double pair_rate(const Waveform& w);

struct CoincidenceHistogram {
    std::vector<double> bin_edges;  // size = rate.size() + 1
    std::vector<double> rate;
    double bin_width = 0.0;
    bool bin_too_wide = false;
};

struct HistogramOptions {
    // Accidental coincidences per unit delay, added to G2 before binning.
    double floor = 0.0;
    // When set, bins wider than a tenth of it raise the bin_too_wide flag.
    std::optional<double> coherence_time;
};

// Bins [start + i t_c, start + (i + 1) t_c) covering [start, stop); each grid
// sample stands for a cell of one delay step centred on it.
CoincidenceHistogram coincidence_histogram(const Waveform& w, double t_c, double start,
                                           double stop, const HistogramOptions& options = {});

// [kappa~(tau) + kappa~(-tau)] convolved with a rectangle on [-tau_g, tau_g].
// Needs a delay grid symmetric about zero.
Waveform interference_bidirectional(const Waveform& kappa_t, double tau_g,
                                    bool unit_peak = true);

}  // namespace bisim
