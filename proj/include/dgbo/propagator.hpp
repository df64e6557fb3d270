#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dgbo/grid.hpp"

namespace dgbo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct EquationParams {
    double alpha = 2.0;
    int k = 4;
    double mu = 1.0;

    void validate() const;
};

// Dispersion relation omega(xi) = xi |xi|^alpha; free waves are exp(i(xi x - omega t)).
double dispersion(double xi, double alpha);

// Multiplier exp(-i t xi |xi|^alpha). The Nyquist mode is left untouched so the group
// stays unitary and maps real fields to real fields.
Field free_evolve(const Field& f, double t, double alpha);
inline Field free_evolve(const Field& f, double t, const EquationParams& p) { return free_evolve(f, t, p.alpha); }

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> times;
    std::vector<double> sup_norms;
};

// Least-squares slope of log sup|V(t) f| against log t. Samples with t < 1 are discarded.
DecayFit dispersive_decay_fit(const Field& f, double alpha, const std::vector<double>& tgrid);

struct StrichartzTriple {
    double p = 0.0;
    double q = 0.0;
    double gamma = 0.0;
};

StrichartzTriple strichartz_gamma(double p, double q, double alpha);
double critical_index(double alpha, int k);
std::pair<double, double> scattering_exponents(double s, double alpha, int k);
// Largest s for which the scattering time exponent stays finite.
double subcritical_range_end(double alpha, int k);

struct ResolutionExponents {
    double pX, qX;  // mixed part of the resolution space
    double pN, qN;  // nonlinearity space
};
ResolutionExponents resolution_exponents(double alpha);

double gwp_growth_exponent(double s, double alpha);
double gwp_threshold(double alpha);

// Exponent e in lambda(N) ~ N^e used to rescale rough data for the I-method.
double imethod_lambda_exponent(double s, double alpha);

}  // namespace dgbo
