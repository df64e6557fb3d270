#pragma once

#include <cstdint>
#include <vector>

#include "dgbo/grid.hpp"

namespace dgbo {

// amplitude * exp(-((x - center) / width)^2); center defaults to the middle of the box
Field gaussian(const Grid& g, double amplitude, double width = 1.0, double center = -1.0);

// Random-phase field with |c(m)| proportional to <xi>^{-s-1/2-delta} for 1 <= |m| <= max_mode,
// scaled to the requested root-mean-square value. Mean zero. Fixed seed gives fixed output.
Field random_hs(const Grid& g, double s, double rms, std::uint64_t seed, int max_mode, double delta = 0.01);

// Sum of cosines amplitude_i * cos(xi_{m_i} x + phase_i)
Field band_limited(const Grid& g, const std::vector<int>& modes, const std::vector<double>& amplitudes,
                   const std::vector<double>& phases = {});

// Gaussian packet amplitude * exp(-((x-center)/width)^2) * cos(xi0 x + phase)
Field wave_packet(const Grid& g, double amplitude, double width, double xi0, double phase, double center = -1.0);

}  // namespace dgbo
