#pragma once

#include <cstdint>
#include <vector>

#include "dgbo/grid.hpp"

namespace dgbo {

// u(t_i, x_j) on uniform times t_i = t0 + i dt, i < nt; the window is [t0, t0 + nt dt).
struct SpaceTimeSample {
    Grid grid;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::vector<double>> values;  // [time][space]

    int nt() const { return static_cast<int>(values.size()); }
    double window() const { return nt() * dt; }
    void validate() const;
};

// C^2 bump (1 - r^2)^3 with r mapping the window onto [-1, 1]
double temporal_taper(double t, double t0, double window);

SpaceTimeSample sample_free_flow(const Field& f, double alpha, double t0, double window, int nt);

// (dx dt / (n nt)) sum <tau + xi|xi|^a>^{2b} <xi>^{2s} |C|^2 with C the 2D transform of the
// tapered sample; the exponent convention is e^{-i(x xi + t tau)}.
double xsb_norm(const SpaceTimeSample& u, double s, double b, double alpha);

// Fraction of the taper's temporal energy beyond the fourth window harmonic.
double taper_leakage(int nt);

// |d/dx(u1 u2 u3 u4)|_{X^{s,b-1}} / prod |u_j|_{X^{s,b}}; the product is formed on a 4x spatial
// grid so it is alias free. Returns NaN when a denominator vanishes.
double multilinear_ratio(const SpaceTimeSample& u1, const SpaceTimeSample& u2, const SpaceTimeSample& u3,
                         const SpaceTimeSample& u4, double s, double b, double alpha);

struct EnsembleSpec {
    int n = 256;
    double L = 64.0;
    int nt = 512;
    double window = 4.0;
    int members = 20;
    std::uint64_t seed = 7;
};

struct EnsembleReport {
    std::vector<double> ratios;
    double max_ratio = 0.0;
    int skipped = 0;
};

// Free Gaussian wave packets with carrier in [0.5, 2] and width in [2, 4]; member i uses
// u1 = u2 = u3 = u4. The packet parameters depend on the seed only, not on the grid.
EnsembleReport multilinear_ensemble(double alpha, double s, double b, const EnsembleSpec& spec);

}  // namespace dgbo
