#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgbo/evolve.hpp"
#include "dgbo/grid.hpp"
#include "dgbo/propagator.hpp"
#include "dgbo/trajectory.hpp"

namespace dgbo {

// Hamiltonian: the functional conserved by u_t + D^a u_x + mu u^k u_x = 0,
//   1/2 int |D^{a/2} u|^2 + mu/((k+1)(k+2)) int u^{k+2}.
// PrintedCoupling: 1/2 int |D^{a/2} u|^2 - mu/(k+2) int u^{k+2}, the form conserved by
//   u_t + D^a u_x = mu d/dx(u^{k+1}).
enum class EnergyForm { Hamiltonian, PrintedCoupling };

double mass(const Field& f);
double energy(const Field& f, const EquationParams& p, EnergyForm form = EnergyForm::Hamiltonian);
// int u^power dx, evaluated on a grid fine enough to be exact for the trigonometric polynomial u
double power_integral(const Field& f, int power);
// pointwise power on a grid of refine * n points (exact when refine >= (power + 1) / 2)
Field field_power(const Field& f, int power, int refine);

// Scaling map u -> lambda^{-alpha/k} u(x / lambda) realized on the dilated grid (n, lambda L).
Field rescale(const Field& f, double lambda, const EquationParams& p);

// Streaming per-x accumulator for L^p_x L^q_t norms of D^order u.
class MixedNormAccumulator {
public:
    MixedNormAccumulator(const Grid& g, double p, double q, double deriv_order);

    void add(double t, const Field& u);
    double value() const;
    const std::vector<double>& per_x() const { return per_x_; }
    double t_start() const { return t0_; }
    double t_now() const { return t_; }
    int samples() const { return count_; }

private:
    std::vector<double> sample(const Field& u) const;

    Grid g_;
    double p_, q_, order_;
    std::vector<double> per_x_, prev_;
    double t0_ = 0.0, t_ = 0.0;
    int count_ = 0;
};

double mixed_norm(const Trajectory& tr, double p, double q, double deriv_order);
double mixed_norm_S(const Trajectory& tr, double s, const EquationParams& p);
double mixed_norm_X2(const Trajectory& tr, double s, const EquationParams& p);
double mixed_norm_N(const Trajectory& g, double s, const EquationParams& p);
// max of sup_t |u|_{H^s dot} and the mixed component
double resolution_norm(const Trajectory& tr, double s, const EquationParams& p);

struct ScatteringReport {
    Field u_plus;
    std::vector<double> times;
    std::vector<double> mismatch;
    std::vector<double> integrand_norm;
    double tail_estimate = 0.0;        // size of the integral beyond the last state
    double tail_ratio = 0.0;           // ratio of consecutive dyadic blocks used for it
    double tail_decay_exponent = 0.0;  // of |N(u(t))| over the second half
    bool unresolved_tail = false;
    double u_plus_norm = 0.0;
    double quadrature_defect = 0.0;    // Simpson sum over the steps against the solver's u_+
};

// Tracks u_+ = u0 + int_0^T V(-t) N(u(t)) dt along a run and records V(-t)u(t) at the
// requested sample times. u_+ is taken from the last state; a three-point Simpson sum on
// consecutive accepted steps is carried alongside as a cross-check.
class ScatteringMonitor {
public:
    ScatteringMonitor(const Grid& g, const EquationParams& p, std::vector<double> sample_times, double tail_tol = 1e-2);

    void observe(const SolverState& s);
    ScatteringReport finish() const;

private:
    std::vector<cplx> integrand(const SolverState& s) const;

    Grid g_;
    EquationParams p_;
    std::vector<double> sample_times_;
    double tail_tol_;
    double sk_;
    std::vector<cplx> acc_;
    std::vector<double> ts_;
    std::vector<std::vector<cplx>> fs_;
    std::vector<cplx> u0_, last_w_;
    std::vector<double> rec_t_;
    std::vector<std::vector<cplx>> rec_w_;
    std::vector<double> integrand_t_, integrand_norm_;
    size_t next_sample_ = 0;
};

ScatteringReport scattering_monitor(const Trajectory& tr, double tail_tol = 1e-2);

struct RatioProbeReport {
    double max_ratio = 0.0;
    std::vector<double> ratios;
    int skipped = 0;
};

RatioProbeReport nonlinear_ratio_probe(const std::vector<Trajectory>& ensemble, double s, const EquationParams& p);

struct IMultiplier {
    double N = 0.0;
    double s = 0.0;
    std::vector<double> table;
};

double imultiplier_symbol(double xi, double N, double s);
IMultiplier make_I_multiplier(const Grid& g, double N, double s);
Field apply_I(const Field& f, const IMultiplier& m);
double I_energy(const Field& f, const IMultiplier& m);  // |I_N f|^2_{L2}

struct BlowupReport {
    bool triggered = false;
    bool sufficient = false;
    std::string note;
    double t_star = 0.0;
    double fitted_exponent = 0.0;
    double predicted_exponent = 0.0;
    std::vector<double> time_to_blowup;
    std::vector<double> norms;
};

// Exploratory: fits log|u(t)|_{H^s dot} against log(T* - t) near a detected blow-up.
BlowupReport blowup_probe(const std::vector<double>& times, const std::vector<double>& norms,
                          std::optional<double> blowup_time, double s, const EquationParams& p,
                          double window_fraction = 0.1);

}  // namespace dgbo
