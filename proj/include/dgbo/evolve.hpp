#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgbo/grid.hpp"
#include "dgbo/propagator.hpp"

namespace dgbo {

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int dealias_degree = 0;  // 0 means k + 1
    bool adapt = false;
    double cfl_safety = 0.5;
    int diagnostics_every = 0;  // 0 disables the diagnostics table
    std::vector<double> land_on;  // times the stepper must hit exactly

    void validate() const;
};

class BlowupError : public std::runtime_error {
public:
    BlowupError(double t, double max_abs);
    double t;
    double max_abs;
};

struct SolverState {
    double t = 0.0;
    Field field;
    EquationParams params;
    double mass0 = 0.0;
    double energy0 = 0.0;
    long steps = 0;
    double last_dt = 0.0;
};

struct DiagnosticsRow {
    double t, dt, mass, energy, l2, hs_crit, linf, imag_residue;
};

// Integrating-factor RK4 on the half spectrum. The state is the Fourier data of u;
// each step runs classical RK4 on exp(i t xi|xi|^alpha) u_hat, restarted at the step start.
class Integrator {
public:
    Integrator(const Grid& g, const EquationParams& p, int dealias_degree = 0);

    void load(const Field& u);
    Field field() const;
    const std::vector<cplx>& half() const { return a_; }

    void step(double h);
    // N(u) = -mu/(k+1) d/dx (P u)^(k+1), projected onto the retained band
    void nonlinearity(const cplx* in, cplx* out);
    double last_max_abs() const { return max_abs_; }
    bool finite() const { return finite_; }
    double mass() const;
    int cutoff() const { return K_; }
    const Grid& grid() const { return g_; }

private:
    void set_exponentials(double h);

    Grid g_;
    EquationParams p_;
    int K_;
    int nh_;
    std::vector<double> xi_, omega_;
    std::vector<cplx> a_, E_, E2_, k1_, k2_, k3_, k4_, tmp_, stage_;
    std::vector<double> u_;
    double h_cached_ = -1.0;
    double max_abs_ = 0.0;
    bool finite_ = true;
};

using Observer = std::function<void(const SolverState&)>;

struct RunResult {
    SolverState final_state;
    std::vector<DiagnosticsRow> diagnostics;
};

Field nonlinearity(const Field& f, const EquationParams& p, int dealias_degree = 0);
SolverState initial_state(const Field& u0, const EquationParams& p);
SolverState step(const SolverState& s, double dt, int dealias_degree = 0);
DiagnosticsRow diagnostics_row(const SolverState& s);

// Observers see the initial state and every accepted step.
RunResult run(const Field& u0, const EquationParams& p, const SolverConfig& cfg,
              const std::vector<Observer>& observers = {});

struct PropagationReport {
    double initial = 0.0;
    double sup = 0.0;
    double ratio = 0.0;
    bool within_hypotheses = true;
    std::string note;
};

// sup over [0, T] of the homogeneous H^{s_hi} norm, relative to its initial value.
// data_regularity is the declared Sobolev regularity of u0.
PropagationReport propagation_check(const Field& u0, double s_hi, const EquationParams& p, const SolverConfig& cfg,
                                    double data_regularity);

}  // namespace dgbo
