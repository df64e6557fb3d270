#include "dgbo/init.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dgbo {

Field gaussian(const Grid& g, double amplitude, double width, double center) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    const double c = center < 0.0 ? 0.5 * g.L : center;
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double z = (g.x(j) - c) / width;
        v[j] = amplitude * std::exp(-z * z);
    }
    return Field::from_values(g, std::move(v));
}

Field random_hs(const Grid& g, double s, double rms, std::uint64_t seed, int max_mode, double delta) {
    if (max_mode < 1 || max_mode >= g.n / 2) throw std::invalid_argument("random_hs: max_mode out of range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<cplx> c(g.n, cplx(0.0));
    for (int m = 1; m <= max_mode; ++m) {
        const double xi = g.wavenumber(m);
        const double a = std::pow(1.0 + xi * xi, -0.5 * (s + 0.5 + delta));
        const cplx z = std::polar(a, phase(rng));
        c[m] = z;
        c[g.n - m] = std::conj(z);
    }
    Field f = Field::from_coeffs(g, c);
    double ms = 0.0;
    for (double v : f.values()) ms += v * v;
    ms = std::sqrt(ms / g.n);
    if (ms == 0.0) return f;
    for (auto& z : c) z *= rms / ms;
    return Field::from_coeffs(g, std::move(c));
}

Field band_limited(const Grid& g, const std::vector<int>& modes, const std::vector<double>& amplitudes,
                   const std::vector<double>& phases) {
    if (modes.size() != amplitudes.size()) throw std::invalid_argument("band_limited: size mismatch");
    std::vector<double> v(g.n, 0.0);
    for (size_t i = 0; i < modes.size(); ++i) {
        if (std::abs(modes[i]) >= g.n / 2) throw std::invalid_argument("band_limited: mode out of range");
        const double xi = 2.0 * std::numbers::pi * modes[i] / g.L;
        const double ph = i < phases.size() ? phases[i] : 0.0;
        for (int j = 0; j < g.n; ++j) v[j] += amplitudes[i] * std::cos(xi * g.x(j) + ph);
    }
    return Field::from_values(g, std::move(v));
}

Field wave_packet(const Grid& g, double amplitude, double width, double xi0, double phase, double center) {
    const double c = center < 0.0 ? 0.5 * g.L : center;
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double z = (g.x(j) - c) / width;
        v[j] = amplitude * std::exp(-z * z) * std::cos(xi0 * (g.x(j) - c) + phase);
    }
    return Field::from_values(g, std::move(v));
}

}  // namespace dgbo
