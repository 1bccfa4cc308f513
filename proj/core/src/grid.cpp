#include "bisim/grid.hpp"

#include <bit>
#include <cmath>

namespace bisim {

UniformAxis spectral_axis(double half_span, std::size_t samples)
{
    const double step = 2.0 * half_span / static_cast<double>(samples);
    return {-static_cast<double>(samples / 2) * step, step, samples};
}

UniformAxis delay_axis(const UniformAxis& omega, double offset)
{
    const double step = two_pi / (static_cast<double>(omega.size) * omega.step);
    const double first = -static_cast<double>(omega.size / 2) + offset;
    return {first * step, step, omega.size};
}

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) noexcept { return std::bit_ceil(n); }

std::vector<double> Waveform::g2() const
{
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = std::norm(values[i]);
    }
    return out;
}

double energy(std::span<const complex> values, double step) noexcept
{
    double sum = 0.0;
    for (const complex& v : values) {
        sum += std::norm(v);
    }
    return sum * step;
}

Waveform make_waveform(const UniformAxis& tau, std::vector<complex> values)
{
    Waveform w{tau, std::move(values), 0.0};
    w.norm = energy(w.values, tau.step);
    return w;
}

}  // namespace bisim
