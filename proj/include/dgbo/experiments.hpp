#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dgbo {

struct CriterionResult {
    int id = 0;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    std::string relation;  // how value is compared with tolerance, e.g. "<=" or ">="
    bool pass = false;
    nlohmann::json details = nlohmann::json::object();
    double seconds = 0.0;
};

nlohmann::json to_json(const CriterionResult& r);

struct DecayOptions {
    std::vector<double> alphas{1.5, 2.0};
    int n = 16384;
    double L = 4096.0;
    int samples = 21;
    double tol = 0.05;
};

struct SolverCheckOptions {
    int n = 256;
    double L = 50.0;
    double order_amplitude = 1.0;
    double order_T = 1.0;
    std::vector<double> order_dts{0.04, 0.02, 0.01, 0.005};
    double picard_amplitude = 0.1;
    double picard_T = 0.1;
    int picard_iter = 12;
    int picard_quad = 400;
    double picard_dt = 1e-4;
};

struct ScatteringOptions {
    int n = 8192;
    double L = 1024.0;
    double amplitude = 0.05;
    double dt = 0.05;
    double T = 50.0;
    int records = 100;
};

struct WaveOperatorOptions {
    int n = 1024;
    double L = 128.0;
    double amplitude = 0.05;
    double width = 4.0;
    double T0 = 20.0;
    double T_max = 60.0;
    int n_iter = 8;
    int n_quad = 2000;
};

struct SmoothingRunOptions {
    double alpha = 2.0;
    double s = 0.25;
    int n = 2048;
    double L = 64.0;
    double rms = 0.3;
    std::uint64_t seed = 1;
    double dt = 5e-4;
    double T = 1.0;
    int samples = 200;
};

struct ImethodRunOptions {
    double alpha = 2.0;
    double s = -0.1;
    std::vector<double> N_list{32, 64, 128, 256};
    int n = 2048;
    double L = 6.283185307179586;
    double rms = 0.1;
    std::uint64_t seed = 1;
    double dt = 1.25e-6;
    double T = 1.0;
    double slope_tol = -0.2;
    bool companion_run = true;  // repeat at 2 dt to expose the time-stepping error
};

struct FrmRunOptions {
    std::vector<double> alphas{1.6, 2.0};
    double s_offset = 0.1;
    bool include_cs = true;
    bool include_level_band = true;
    double tol = 1.1;
};

struct MultilinearOptions {
    double alpha = 2.0;
    double s = 0.0;
    double b = 0.55;
    int n = 256;
    double L = 64.0;
    int nt = 512;
    double window = 4.0;
    int members = 20;
    std::uint64_t seed = 7;
    double tol = 0.15;
};

CriterionResult check_spectral_calculus();
CriterionResult check_conservation();
CriterionResult check_scaling_law();
CriterionResult check_exponent_calculus();
CriterionResult check_dispersive_decay(const DecayOptions& o = {});
CriterionResult check_solver_order(const SolverCheckOptions& o = {});
CriterionResult check_scattering(const ScatteringOptions& o = {});
CriterionResult check_wave_operator(const WaveOperatorOptions& o = {});
CriterionResult check_smoothing(const SmoothingRunOptions& o = {});
CriterionResult check_imethod(const ImethodRunOptions& o = {});
CriterionResult check_frm(const FrmRunOptions& o = {});
CriterionResult check_multilinear(const MultilinearOptions& o = {});
CriterionResult check_propagation();

struct CriterionEntry {
    int id;
    std::string name;
    std::function<CriterionResult()> run;
};

// The thirteen acceptance checks with their default settings, in order.
std::vector<CriterionEntry> acceptance_suite();

}  // namespace dgbo
