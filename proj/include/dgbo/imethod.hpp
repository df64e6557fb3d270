#pragma once

#include <string>
#include <vector>

#include "dgbo/analysis.hpp"
#include "dgbo/evolve.hpp"

namespace dgbo {

struct AlmostConservationReport {
    std::vector<double> N_list;
    std::vector<double> increments;  // |I_N u(T)|^2 - |I_N u0|^2, absolute value
    std::vector<double> I_norms0;    // |I_N u0|^2
    std::vector<bool> excluded;      // below the noise floor
    double fitted_slope = 0.0;
    double predicted_slope = 0.0;    // -(alpha - 3/2)
    double mass_drift = 0.0;         // relative; the scale below which increments are not physical
    double T = 0.0;
    int steps = 0;
};

inline constexpr double kIncrementNoiseFloor = 1e-13;

// One nonlinear run from u0 to T, then the I_N increment for every N in N_list.
AlmostConservationReport almost_conservation_experiment(const Field& u0, const EquationParams& p, double s,
                                                        const SolverConfig& cfg, const std::vector<double>& N_list);

struct LambdaCheck {
    std::vector<double> N_list;
    std::vector<double> lambdas;
    double fitted_exponent = 0.0;
    double formula_exponent = 0.0;
};

// Solves |I_N u0^lambda|_{L2} = |I_{N_0} u0|_{L2} for lambda at each N, for a profile on the line with
// |u0^(xi)| = <xi>^{-s-1/2-delta}, k = 3, and fits log lambda against log N.
LambdaCheck lambda_scaling_check(double s, double alpha, const std::vector<double>& N_list, double delta = 0.01);

}  // namespace dgbo
