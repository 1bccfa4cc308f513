#include "bisim/transform.hpp"

#include "bisim/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>

namespace bisim {

namespace {

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

class ForwardFft {
public:
    explicit ForwardFft(std::size_t n)
        : n_(n),
          in_(fftw_alloc_complex(n)),
          out_(fftw_alloc_complex(n))
    {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    }
    ~ForwardFft()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    ForwardFft(const ForwardFft&) = delete;
    ForwardFft& operator=(const ForwardFft&) = delete;

    complex* input() noexcept { return reinterpret_cast<complex*>(in_.get()); }
    const complex* output() const noexcept { return reinterpret_cast<const complex*>(out_.get()); }
    void execute() noexcept { fftw_execute(plan_); }
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::unique_ptr<fftw_complex, FftwFree> in_;
    std::unique_ptr<fftw_complex, FftwFree> out_;
    fftw_plan plan_ = nullptr;
};

double alternating(std::size_t k) noexcept { return (k & 1u) ? -1.0 : 1.0; }

void check_spectrum(const ComplexSpectrum& s)
{
    if (!is_power_of_two(s.omega.size) || s.omega.size < 4 || s.values.size() != s.omega.size) {
        throw Error(ErrorKind::GridMismatch, "spectrum length must be a power of two >= 4");
    }
}

}  // namespace

Waveform to_delay_domain(const ComplexSpectrum& spectrum, double scale, double offset)
{
    check_spectrum(spectrum);
    const std::size_t n = spectrum.omega.size;
    const double nd = static_cast<double>(n);
    // w_k tau_j = 2 pi (k - n/2)(j - n/2 + offset) / n; the (k - n/2) offset
    // becomes a sign flip, the delay offset a linear phase on the input.
    ForwardFft fft(n);
    complex* in = fft.input();
    for (std::size_t k = 0; k < n; ++k) {
        const double shifted = static_cast<double>(k) - 0.5 * nd;
        const double angle = -two_pi * shifted * offset / nd;
        in[k] = spectrum.values[k] * complex{std::cos(angle), std::sin(angle)} * alternating(k);
    }
    fft.execute();

    const double factor = scale * spectrum.omega.step / two_pi;
    const UniformAxis tau = delay_axis(spectrum.omega, offset);
    std::vector<complex> out(n);
    const complex* y = fft.output();
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = factor * alternating(j + n / 2) * y[j];
    }
    return make_waveform(tau, std::move(out));
}

Waveform to_delay_domain_direct(const ComplexSpectrum& spectrum, double scale, double offset)
{
    check_spectrum(spectrum);
    const std::size_t n = spectrum.omega.size;
    const UniformAxis tau = delay_axis(spectrum.omega, offset);
    const double factor = scale * spectrum.omega.step / two_pi;
    const double nd = static_cast<double>(n);
    std::vector<complex> out(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const double tj = static_cast<double>(j) - 0.5 * nd + offset;
            complex acc{};
            for (std::size_t k = 0; k < n; ++k) {
                // reduce the phase index modulo n before scaling to keep it exact
                const double kk = static_cast<double>(k) - 0.5 * nd;
                const double turns = std::fmod(kk * tj, nd);
                const double angle = -two_pi * turns / nd;
                acc += spectrum.values[k] * complex{std::cos(angle), std::sin(angle)};
            }
            out[j] = factor * acc;
        }
    }, 16);
    return make_waveform(tau, std::move(out));
}

Waveform circular_convolution(const Waveform& a, const Waveform& b, double scale)
{
    const std::size_t n = a.tau.size;
    if (b.tau.size != n || a.values.size() != n || b.values.size() != n || n == 0) {
        throw Error(ErrorKind::GridMismatch, "convolution operands differ in length");
    }
    const double step = a.tau.step;
    if (std::abs(b.tau.step - step) > 1e-12 * std::abs(step)) {
        throw Error(ErrorKind::GridMismatch, "convolution operands differ in delay spacing");
    }
    const double period = step * static_cast<double>(n);
    const double first = -0.5 * period;
    const double shift = (first - a.tau.start - b.tau.start) / step;
    const auto q = static_cast<long long>(std::ceil(shift - 1e-9));
    const double start = a.tau.start + b.tau.start + static_cast<double>(q) * step;

    // br[j] = b[(-j) mod n], so b[(i + q - m) mod n] = br[(m + s) mod n]
    // with s = (-i - q) mod n; the inner loop then runs over contiguous memory.
    const auto nn = static_cast<long long>(n);
    std::vector<double> are(n), aim(n), bre(n), bim(n);
    for (std::size_t m = 0; m < n; ++m) {
        are[m] = a.values[m].real();
        aim[m] = a.values[m].imag();
        const std::size_t r = (n - m) % n;
        bre[m] = b.values[r].real();
        bim[m] = b.values[r].imag();
    }

    std::vector<complex> out(n);
    const double factor = scale * step;
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto s = static_cast<std::size_t>(((-static_cast<long long>(i) - q) % nn + nn) % nn);
            double re = 0.0;
            double im = 0.0;
            const std::size_t split = n - s;
            for (std::size_t m = 0; m < split; ++m) {
                re += are[m] * bre[m + s] - aim[m] * bim[m + s];
                im += are[m] * bim[m + s] + aim[m] * bre[m + s];
            }
            for (std::size_t m = split; m < n; ++m) {
                re += are[m] * bre[m - split] - aim[m] * bim[m - split];
                im += are[m] * bim[m - split] + aim[m] * bre[m - split];
            }
            out[i] = factor * complex{re, im};
        }
    }, 64);
    return make_waveform({start, step, n}, std::move(out));
}

}  // namespace bisim
