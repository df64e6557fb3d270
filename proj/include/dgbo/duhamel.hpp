#pragma once

#include <stdexcept>
#include <vector>

#include "dgbo/trajectory.hpp"

namespace dgbo {

class NoContraction : public std::runtime_error {
public:
    explicit NoContraction(const std::string& what) : std::runtime_error(what) {}
};

struct PicardReport {
    Trajectory traj;
    std::vector<double> update_norms;  // sup-t L2 size of each iteration's change
    double contraction = 0.0;          // largest ratio of consecutive updates
};

// Cumulative integral of equally spaced samples: Simpson on pairs, a 3/8 panel for odd
// indices >= 3, and a third-order start for index 1.
std::vector<std::vector<cplx>> cumulative_integral(const std::vector<std::vector<cplx>>& f, double h);

// Picard iteration of u = V(t)u0 + int_0^t V(t - tau) N(u(tau)) dtau on n_quad + 1 uniform times.
// n_iter = 0 returns the free evolution.
PicardReport picard_solve(const Field& u0, const EquationParams& p, double T, int n_iter, int n_quad);

struct WaveOperatorReport {
    Trajectory traj;  // u = v + V(t) v0 on [T0, T_max]
    std::vector<double> update_norms;
    double contraction = 0.0;
    std::vector<double> mismatch;  // |u(t) - V(t) v0| in the critical homogeneous norm
    double tail_estimate = 0.0;    // bound for the part of the integral beyond T_max
};

// Iterates v(t) = -int_t^{T_max} V(t - tau) N(v + V(tau) v0) dtau.
WaveOperatorReport wave_operator(const Field& v0, const EquationParams& p, double T0, double T_max, int n_iter,
                                 int n_quad);

// t -> u(t) - V(t) u(0)
Trajectory duhamel_part(const Trajectory& tr);

// max over interior samples of |d/dt u + D^a u_x + mu u^k u_x|_{L2}, with the time derivative
// taken by central differences in the interaction picture.
double pde_residual(const Trajectory& tr);

}  // namespace dgbo
