#pragma once

#include "dgbo/grid.hpp"

namespace dgbo::fft {

// Forward transforms carry no prefactor, inverse transforms carry 1/n.
// Plans are cached per size; execution is safe from several threads.
void forward(const cplx* in, cplx* out, int n);
void inverse(const cplx* in, cplx* out, int n);

// Real transforms over the half spectrum (n/2 + 1 entries). irfft leaves its input intact.
void rfft(const double* in, cplx* out, int n);
void irfft(const cplx* in, double* out, int n);

std::vector<cplx> forward(const std::vector<double>& v);
std::vector<cplx> forward(const std::vector<cplx>& v);
std::vector<cplx> inverse(const std::vector<cplx>& c);

}  // namespace dgbo::fft
