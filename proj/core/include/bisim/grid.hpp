#pragma once

#include "bisim/units.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bisim {

struct UniformAxis {
    double start = 0.0;
    double step = 0.0;
    std::size_t size = 0;

    double operator[](std::size_t i) const noexcept
    {
        return start + step * static_cast<double>(i);
    }
    double back() const noexcept { return (*this)[size - 1]; }
    // Length of one period of the sampled function.
    double period() const noexcept { return step * static_cast<double>(size); }

    bool operator==(const UniformAxis&) const = default;
};

// Detuning axis w_k = (k - n/2) dw, n a power of two.
UniformAxis spectral_axis(double half_span, std::size_t samples);

// Delay axis conjugate to a spectral axis: dtau = 2 pi / (n dw), with samples
// at (j - n/2 + offset) dtau. offset = 0.5 keeps tau = 0 off the grid.
UniformAxis delay_axis(const UniformAxis& omega, double offset = 0.5);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

struct ComplexSpectrum {
    UniformAxis omega;
    std::vector<complex> values;
    double center_freq = 0.0;  // anti-Stokes carrier, rad/s
};

struct Waveform {
    UniformAxis tau;
    std::vector<complex> values;
    double norm = 0.0;  // integral of |psi|^2 over tau

    std::vector<double> g2() const;
};

// Rectangle-rule integral of |values|^2.
double energy(std::span<const complex> values, double step) noexcept;

Waveform make_waveform(const UniformAxis& tau, std::vector<complex> values);

template <class F>
ComplexSpectrum sample_spectrum(const UniformAxis& omega, F&& f, double center_freq = 0.0)
{
    ComplexSpectrum s{omega, std::vector<complex>(omega.size), center_freq};
    for (std::size_t k = 0; k < omega.size; ++k) {
        s.values[k] = f(omega[k]);
    }
    return s;
}

template <class F>
Waveform sample_waveform(const UniformAxis& tau, F&& f)
{
    std::vector<complex> v(tau.size);
    for (std::size_t j = 0; j < tau.size; ++j) {
        v[j] = f(tau[j]);
    }
    return make_waveform(tau, std::move(v));
}

}  // namespace bisim
