#include "bisim/biphoton.hpp"

#include "bisim/errors.hpp"
#include "bisim/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bisim {

namespace {

constexpr double edge_gate = 1e-6;
constexpr double alias_gate = 1e-4;
constexpr std::size_t alias_band = 3;

double edge_power_ratio(const ComplexSpectrum& s)
{
    const std::size_t n = s.values.size();
    const std::size_t band = std::max<std::size_t>(1, n / 64);
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(s.values[k]);
        peak = std::max(peak, p);
        if (k < band || k >= n - band) {
            edge = std::max(edge, p);
        }
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

complex kappa(double omega, const MediumParams& m, const DriveParams& d)
{
    const double prefactor = std::sqrt(d.omega_as * d.omega_s) / (2.0 * speed_of_light);
    return complex{0.0, -prefactor} * chi3(omega, m, d);
}

ComplexSpectrum kappa_spectrum(const UniformAxis& grid, const MediumParams& m,
                               const DriveParams& d)
{
    return sample_spectrum(grid, [&](double w) { return kappa(w, m, d); }, d.omega_as);
}

Waveform psi_from_spectrum(const ComplexSpectrum& kappa_phi, double length)
{
    const double ratio = edge_power_ratio(kappa_phi);
    if (ratio > edge_gate) {
        std::ostringstream msg;
        msg << "spectral power at the grid edge is " << ratio << " of its peak";
        throw Error(ErrorKind::GridTooNarrow, msg.str());
    }
    Waveform psi = to_delay_domain(kappa_phi, length, 0.5);
    const std::size_t n = psi.values.size();
    if (psi.norm > 0.0 && n > 2 * alias_band) {
        std::span<const complex> v(psi.values);
        const double boundary = energy(v.first(alias_band), psi.tau.step) +
                                energy(v.last(alias_band), psi.tau.step);
        if (boundary > alias_gate * psi.norm) {
            std::ostringstream msg;
            msg << "boundary energy fraction " << boundary / psi.norm;
            throw Error(ErrorKind::AliasingDetected, msg.str());
        }
    }
    return psi;
}

complex psi_at(const ComplexSpectrum& kappa_phi, double length, double tau)
{
    complex sum{};
    for (std::size_t k = 0; k < kappa_phi.values.size(); ++k) {
        sum += kappa_phi.values[k] * std::polar(1.0, -kappa_phi.omega[k] * tau);
    }
    return length * kappa_phi.omega.step / two_pi * sum;
}

Waveform kappa_kernel(const ComplexSpectrum& kappa) { return to_delay_domain(kappa, 1.0, 0.5); }

Waveform phi_kernel(const ComplexSpectrum& phi) { return to_delay_domain(phi, 1.0, 0.0); }

Waveform psi_by_convolution(const Waveform& kappa_t, const Waveform& phi_t, double length)
{
    return circular_convolution(kappa_t, phi_t, length);
}

std::vector<double> g2(const Waveform& w) { return w.g2(); }

double pair_rate(const ComplexSpectrum& kappa_phi, double length)
{
    double sum = 0.0;
    for (const complex& v : kappa_phi.values) {
        sum += std::norm(v);
    }
    return length * length * sum * kappa_phi.omega.step / two_pi;
}

double pair_rate(const Waveform& w) { return energy(w.values, w.tau.step); }

CoincidenceHistogram coincidence_histogram(const Waveform& w, double t_c, double start,
                                           double stop, const HistogramOptions& options)
{
    if (!(t_c > 0.0) || !(stop > start)) {
        throw Error(ErrorKind::NonPhysicalParams, "histogram needs t_c > 0 and stop > start");
    }
    const std::size_t n = w.values.size();
    const double step = w.tau.step;
    // cumulative[j] = integral of the cell-wise constant G2 up to the left
    // edge of cell j
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cumulative[j + 1] = cumulative[j] + std::norm(w.values[j]) * step;
    }
    const double left = w.tau.start - 0.5 * step;
    const auto integral_to = [&](double t) {
        const double u = (t - left) / step;
        if (u <= 0.0) {
            return 0.0;
        }
        if (u >= static_cast<double>(n)) {
            return cumulative[n];
        }
        const auto j = static_cast<std::size_t>(u);
        return cumulative[j] + (u - static_cast<double>(j)) * std::norm(w.values[j]) * step;
    };

    const auto bins = static_cast<std::size_t>(std::ceil((stop - start) / t_c - 1e-9));
    CoincidenceHistogram h;
    h.bin_width = t_c;
    h.bin_edges.resize(bins + 1);
    h.rate.resize(bins);
    for (std::size_t i = 0; i <= bins; ++i) {
        h.bin_edges[i] = start + static_cast<double>(i) * t_c;
    }
    for (std::size_t i = 0; i < bins; ++i) {
        const double value = integral_to(h.bin_edges[i + 1]) - integral_to(h.bin_edges[i]);
        h.rate[i] = std::max(0.0, value) + options.floor * t_c;
    }
    if (options.coherence_time) {
        h.bin_too_wide = t_c > *options.coherence_time / 10.0;
    }
    return h;
}

Waveform interference_bidirectional(const Waveform& kappa_t, double tau_g, bool unit_peak)
{
    const std::size_t n = kappa_t.values.size();
    const double step = kappa_t.tau.step;
    if (n == 0 || std::abs(kappa_t.tau.start + kappa_t.tau.back()) > 1e-9 * step * n) {
        throw Error(ErrorKind::GridMismatch, "interference needs a delay grid symmetric about 0");
    }
    std::vector<complex> sym(n);
    for (std::size_t i = 0; i < n; ++i) {
        sym[i] = kappa_t.values[i] + kappa_t.values[n - 1 - i];
    }

    // Rectangle of width 2 tau_g sampled with cell-averaged weights: full weight
    // for |j| < J, fractional weight `rim` at |j| = J.
    const double half = std::max(tau_g, 0.0) / step;
    const auto reach = static_cast<long long>(std::floor(half + 0.5));
    const double rim = half + 0.5 - static_cast<double>(reach);

    std::vector<complex> prefix(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + sym[i];
    }
    const auto nn = static_cast<long long>(n);
    const auto range_sum = [&](long long lo, long long hi) {  // inclusive, clipped
        lo = std::max(lo, 0LL);
        hi = std::min(hi, nn - 1);
        return lo > hi ? complex{} : prefix[hi + 1] - prefix[lo];
    };
    const auto at = [&](long long i) {
        return (i >= 0 && i < nn) ? sym[static_cast<std::size_t>(i)] : complex{};
    };

    std::vector<complex> out(n);
    for (long long i = 0; i < nn; ++i) {
        complex acc = range_sum(i - reach + 1, i + reach - 1);
        if (reach > 0) {
            acc += rim * (at(i - reach) + at(i + reach));
        } else {
            acc += rim * at(i);
        }
        out[static_cast<std::size_t>(i)] = step * acc;
    }
    if (unit_peak) {
        double peak = 0.0;
        for (const complex& v : out) {
            peak = std::max(peak, std::abs(v));
        }
        if (peak > 0.0) {
            for (complex& v : out) {
                v /= peak;
            }
        }
    }
    return make_waveform(kappa_t.tau, std::move(out));
}

}  // namespace bisim
