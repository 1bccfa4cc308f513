#pragma once

#include "bisim/grid.hpp"

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bisim {

// Runs body(begin, end) over disjoint chunks of [0, n) on worker threads.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 256)
{
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunks = std::clamp<std::size_t>(n / std::max<std::size_t>(min_chunk, 1), 1, hw);
    if (chunks == 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    const std::size_t per = (n + chunks - 1) / chunks;
    for (std::size_t c = 1; c < chunks; ++c) {
        const std::size_t begin = std::min(n, c * per);
        const std::size_t end = std::min(n, begin + per);
        workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(std::size_t{0}, std::min(n, per));
}

// scale / (2 pi) * sum_k F_k exp(-i w_k tau_j) dw on delay_axis(omega, offset),
// computed with one FFT.
Waveform to_delay_domain(const ComplexSpectrum& spectrum, double scale = 1.0,
                         double offset = 0.5);

// Same sum evaluated term by term; O(N^2) reference.
Waveform to_delay_domain_direct(const ComplexSpectrum& spectrum, double scale = 1.0,
                                double offset = 0.5);

// scale * integral a(t) b(tau - t) dt on the common periodic grid. The output
// axis starts at the first sample of [-T/2, -T/2 + dtau).
Waveform circular_convolution(const Waveform& a, const Waveform& b, double scale = 1.0);

}  // namespace bisim
