#pragma once

#include <functional>

#include "dgbo/grid.hpp"

namespace dgbo {

struct SobolevIndex {
    double s = 0.0;
    bool homogeneous = false;
};

// Multiplies coefficient j by symbol(xi_j, j). The caller decides what happens at Nyquist.
Field apply_multiplier(const Field& f, const std::function<cplx(double xi, int j)>& symbol);

// |xi|^a, with |0|^0 = 1.
Field fractional_derivative(const Field& f, double a);
// symbol -i sgn(xi); Nyquist dropped
Field hilbert(const Field& f);
// symbol i xi; Nyquist dropped
Field derivative(const Field& f);
// <xi>^s = (1 + xi^2)^(s/2)
Field bessel_potential(const Field& f, double s);

// max |D^a f - (H d/dx)^a f| for a in {1, 2}
double check_symbol_identity(const Field& f, double a);

// L2 norm of J^s f, or of D^s f off the mean mode when homogeneous.
// Throws std::domain_error for a homogeneous index with s < 0 and a nonzero mean.
double sobolev_norm(const Field& f, const SobolevIndex& idx);
double sobolev_norm(const Field& f, double s, bool homogeneous);
// Homogeneous norm that ignores the mean mode for every s (diagnostic use).
double homogeneous_norm_off_mean(const Field& f, double s);

// Largest retained |m| for a degree-d product: |m| * (d + 1) < n.
int dealias_cutoff(int n, int degree);
Field dealias(const Field& f, int degree);

// Pointwise product evaluated on a grid fine enough that no mode aliases.
Field exact_product(const Field& a, const Field& b);

}  // namespace dgbo
