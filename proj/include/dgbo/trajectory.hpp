#pragma once

#include <vector>

#include "dgbo/evolve.hpp"
#include "dgbo/grid.hpp"
#include "dgbo/propagator.hpp"

namespace dgbo {

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> fields;
    EquationParams params;

    size_t size() const { return times.size(); }
    const Grid& grid() const { return fields.front().grid(); }
    void validate() const;
};

// Runs the nonlinear solver and records the field at each requested time (times[0] must be 0).
Trajectory sample_run(const Field& u0, const EquationParams& p, SolverConfig cfg, const std::vector<double>& times);

// Free evolution of f sampled at the given times.
Trajectory linear_trajectory(const Field& f, const EquationParams& p, const std::vector<double>& times);

std::vector<double> uniform_times(double t0, double t1, int intervals);

// sup over samples of the L2 distance between matching snapshots
double sup_l2_gap(const Trajectory& a, const Trajectory& b);

}  // namespace dgbo
