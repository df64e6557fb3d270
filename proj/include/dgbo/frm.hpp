#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dgbo::frm {

// Phi = xi|xi|^a - sum_j xi_j|xi_j|^a with xi = xi1 + xi2 + xi3 + xi4
double phase(double xi1, double xi2, double xi3, double xi4, double alpha);

struct QuadratureOptions {
    double rel_tol = 1e-7;
    int max_depth = 14;
};

// Restricted integrals over the ordered region |xi| >= |xi1| >= |xi2| >= |xi3| >= |xi4| with
// the indicator |Phi - beta| < M. Inner variables are integrated over the exact preimage
// intervals of the band (Phi is piecewise monotone), outer ones adaptively.
double I1_integral(double xi, double xi3, double beta, double s, double M, double alpha,
                   const QuadratureOptions& opt = {});
double J1_integral(double xi1, double xi2, double xi3, double beta, double s, double M, double alpha);
double J2_integral(double xi, double xi4, double beta, double s, double M, double alpha,
                   const QuadratureOptions& opt = {});

struct CsResult {
    std::vector<double> values;  // one per M
    bool resolution_warning = false;
    double unrestricted = 0.0;
};

// Midpoint rule on cells of size h over the cube |xi_j| <= |xi| (j = 1..3), xi4 = xi - sum.
// Integrand |xi|^2 <xi>^{2s} / prod <xi_j>^{2s} restricted to the ordered region and |Phi| < M.
CsResult cs_integral(double xi, double s, const std::vector<double>& Ms, double alpha, double h = 1.0 / 64.0);

// Area of {|p|, |q| < N : |p^2 + sign q^2 - beta| < M}, sign = +1 or -1.
double level_band_area(double M, double beta, double N, int sign);

// Phi range over the region each integral ranges over (used to place beta samples).
std::pair<double, double> phi_range_I1(double xi, double xi3, double alpha);
std::pair<double, double> phi_range_J1(double xi1, double xi2, double xi3, double alpha);
std::pair<double, double> phi_range_J2(double xi, double xi4, double alpha);

struct MFit {
    std::vector<double> M_grid;
    std::vector<double> sup_values;
    double slope = 0.0;
    bool saturated = false;  // slope ~ 0 everywhere: the grid sits in the saturation regime
};

// Slope of log(sup over samples) against log M. family(i, M) evaluates sample i.
MFit fit_M_exponent(const std::function<double(size_t, double)>& family, const std::vector<double>& M_grid,
                    size_t n_samples);
// Same, from precomputed values[sample][m]
MFit fit_M_exponent(const std::vector<std::vector<double>>& values, const std::vector<double>& M_grid);

struct SweepReport {
    std::string integral;
    double alpha = 0.0;
    double s = 0.0;
    std::vector<double> M_grid;
    std::vector<double> sup_values;
    double fitted_slope = 0.0;
    bool saturated = false;
    bool pass = false;
    size_t samples = 0;
};

// Default design: frequencies {2, 4, 8, 16, 32}, 9 beta values across the Phi range, M = 2^0..2^6.
std::vector<double> default_M_grid();
std::vector<double> default_frequencies();

SweepReport sweep_I1(double alpha, double s, const std::vector<double>& M_grid = default_M_grid());
SweepReport sweep_J1(double alpha, double s, const std::vector<double>& M_grid = default_M_grid());
SweepReport sweep_J2(double alpha, double s, const std::vector<double>& M_grid = default_M_grid());
SweepReport sweep_cs(double alpha, double s, const std::vector<double>& M_grid = default_M_grid());
// M over [1e-3, 1e-1], N = 10, beta in {0, N^2/2, -N^2/2}, both signs
SweepReport sweep_level_band(double N = 10.0);

}  // namespace dgbo::frm
