#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dgbo/analysis.hpp"
#include "dgbo/duhamel.hpp"
#include "dgbo/evolve.hpp"
#include "dgbo/io.hpp"
#include "dgbo/propagator.hpp"
#include "dgbo/trajectory.hpp"

#ifndef DGBO_VERSION
#define DGBO_VERSION "unknown"
#endif

namespace dgbo::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
        os << "\n";
    }
    io::write_text_atomic(path, os.str());
}

CriterionResult criterion(const std::string& name, double value, double tol, const std::string& rel, bool pass) {
    CriterionResult r;
    r.name = name;
    r.value = value;
    r.tolerance = tol;
    r.relation = rel;
    r.pass = pass;
    return r;
}

template <class T>
T opt(const ExperimentConfig& c, const std::string& key, T fallback) {
    json v = get_path(c.raw, key, nullptr);
    if (v.is_null()) return fallback;
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config key " + key + " has the wrong type");
    }
}

double opt_real(const ExperimentConfig& c, const std::string& key, double fallback) {
    json v = get_path(c.raw, key, nullptr);
    if (v.is_null()) return fallback;
    if (v.is_string()) return parse_real(v.get<std::string>());
    if (!v.is_number()) throw std::invalid_argument("config key " + key + " must be a number or \"inf\"");
    return v.get<double>();
}

// --- evolve -------------------------------------------------------------------------------

double observer_value(const DiagnosticsRow& r, const std::string& name) {
    if (name == "mass") return r.mass;
    if (name == "energy") return r.energy;
    if (name == "l2") return r.l2;
    if (name == "hs_crit") return r.hs_crit;
    if (name == "linf") return r.linf;
    return r.imag_residue;
}

CommandOutput cmd_evolve(const ExperimentConfig& c, const std::string& dir) {
    double t0 = 0.0;
    const Field u0 = make_initial(c, &t0);
    SolverConfig cfg = c.time;
    if (c.time.t_end < t0) throw std::invalid_argument("time.t_end lies before the stored field time");
    cfg.t_end = c.time.t_end - t0;
    const double every = opt<double>(c, "evolve.checkpoint_every", 0.0);
    if (every < 0.0) throw std::invalid_argument("evolve.checkpoint_every must be nonnegative");
    if (every > 0.0)
        for (double t = every; t < cfg.t_end - 1e-12 * every; t += every) cfg.land_on.push_back(t);
    const double mass_tol = opt<double>(c, "evolve.mass_tol", 1e-8);

    std::vector<Observer> obs;
    size_t next_ck = 0;
    int checkpoints = 0;
    if (every > 0.0)
        obs.push_back([&](const SolverState& s) {
            if (next_ck < cfg.land_on.size() && std::abs(s.t - cfg.land_on[next_ck]) <= 1e-9 * std::max(1.0, s.t)) {
                io::write_field(dir + "/checkpoint", s.field, t0 + s.t);
                ++next_ck;
                ++checkpoints;
            }
        });

    CommandOutput out;
    const double m0 = mass(u0);
    try {
        RunResult res = run(u0, c.eq, cfg, obs);
        std::vector<std::string> header{"t", "dt"};
        for (const auto& o : c.observers) header.push_back(o);
        std::vector<std::vector<double>> rows;
        for (const auto& r : res.diagnostics) {
            std::vector<double> row{t0 + r.t, r.dt};
            for (const auto& o : c.observers) row.push_back(observer_value(r, o));
            rows.push_back(std::move(row));
        }
        write_csv(dir + "/diagnostics.csv", header, rows);
        const Field& uT = res.final_state.field;
        io::write_field(dir + "/final", uT, t0 + res.final_state.t);
        const double drift = m0 > 0.0 ? std::abs(mass(uT) - m0) / m0 : std::abs(mass(uT));
        out.criteria.push_back(criterion("finite solution", 1.0, 1.0, "==", true));
        out.criteria.push_back(criterion("relative mass drift", drift, mass_tol, "<=", drift <= mass_tol));
        out.report = {{"experiment", "evolve"},
                      {"t_start", t0},
                      {"t_end", t0 + res.final_state.t},
                      {"steps", res.final_state.steps},
                      {"checkpoints", checkpoints},
                      {"mass0", m0},
                      {"mass_drift", drift}};
    } catch (const BlowupError& e) {
        out.criteria.push_back(criterion("finite solution", 0.0, 1.0, "==", false));
        out.report = {{"experiment", "evolve"}, {"blowup_time", t0 + e.t}, {"max_abs", e.max_abs}};
    }
    return out;
}

// --- linear -------------------------------------------------------------------------------

CommandOutput cmd_linear(const ExperimentConfig& c, const std::string& dir) {
    const Field f = make_initial(c);
    const int samples = opt<int>(c, "linear.samples", 21);
    const double tol = opt<double>(c, "linear.tol", 0.05);
    const double T = c.time.t_end;
    if (!(T > 1.0)) throw std::invalid_argument("linear needs time.t_end > 1 (the fit uses t >= 1)");
    if (samples < 3) throw std::invalid_argument("linear.samples must be at least 3");
    std::vector<double> ts;
    for (int i = 0; i < samples; ++i) ts.push_back(std::pow(T, double(i) / (samples - 1)));
    const DecayFit fit = dispersive_decay_fit(f, c.eq.alpha, ts);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < fit.times.size(); ++i) rows.push_back({fit.times[i], fit.sup_norms[i]});
    write_csv(dir + "/decay.csv", {"t", "sup_abs"}, rows);
    io::write_field(dir + "/final", free_evolve(f, T, c.eq.alpha), T);
    const double pred = -1.0 / (c.eq.alpha + 1.0);
    const double err = std::abs(fit.slope - pred);
    CommandOutput out;
    out.criteria.push_back(criterion("decay slope error", err, tol, "<=", err <= tol));
    out.report = {{"experiment", "linear"}, {"fitted_slope", fit.slope}, {"predicted_slope", pred},
                  {"tolerance_pass", err <= tol}, {"samples", fit.times.size()}};
    return out;
}

// --- picard -------------------------------------------------------------------------------

CommandOutput cmd_picard(const ExperimentConfig& c, const std::string& dir) {
    const Field u0 = make_initial(c);
    const double T = opt<double>(c, "picard.T", c.time.t_end);
    const int n_iter = opt<int>(c, "picard.n_iter", 12);
    const int n_quad = opt<int>(c, "picard.n_quad", 400);
    const double tol = opt<double>(c, "picard.tol", 1e-6);
    CommandOutput out;
    try {
        const PicardReport pic = picard_solve(u0, c.eq, T, n_iter, n_quad);
        SolverConfig cfg = c.time;
        cfg.t_end = T;
        const Trajectory ev = sample_run(u0, c.eq, cfg, pic.traj.times);
        const double gap = sup_l2_gap(ev, pic.traj);
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < pic.update_norms.size(); ++i) rows.push_back({double(i + 1), pic.update_norms[i]});
        write_csv(dir + "/picard_updates.csv", {"iteration", "update_norm"}, rows);
        out.criteria.push_back(criterion("picard vs evolve sup-t L2 gap", gap, tol, "<=", gap <= tol));
        out.report = {{"experiment", "picard"}, {"gap", gap}, {"contraction", pic.contraction},
                      {"tolerance_pass", gap <= tol}, {"samples", pic.traj.size()}};
    } catch (const NoContraction& e) {
        out.criteria.push_back(criterion("picard contraction", kInf, 1.0, "<", false));
        out.report = {{"experiment", "picard"}, {"error", e.what()}};
    }
    return out;
}

// --- waveop -------------------------------------------------------------------------------

CommandOutput cmd_waveop(const ExperimentConfig& c, const std::string& dir) {
    const Field v0 = make_initial(c);
    const double T0 = opt<double>(c, "waveop.T0", 20.0);
    const double Tmax = opt<double>(c, "waveop.T_max", 60.0);
    const int n_iter = opt<int>(c, "waveop.n_iter", 8);
    const int n_quad = opt<int>(c, "waveop.n_quad", 2000);
    CommandOutput out;
    try {
        const WaveOperatorReport rep = wave_operator(v0, c.eq, T0, Tmax, n_iter, n_quad);
        std::vector<std::vector<double>> rows;
        double rise = 0.0, scale = 0.0;
        for (size_t i = 0; i < rep.mismatch.size(); ++i) {
            rows.push_back({rep.traj.times[i], rep.mismatch[i]});
            scale = std::max(scale, rep.mismatch[i]);
            if (i) rise = std::max(rise, rep.mismatch[i] - rep.mismatch[i - 1]);
        }
        write_csv(dir + "/mismatch.csv", {"t", "mismatch"}, rows);
        io::write_field(dir + "/u_T0", rep.traj.fields.front(), T0);
        const bool mono = rise <= 1e-12 * scale;
        out.criteria.push_back(criterion("contraction factor", rep.contraction, 1.0, "<", rep.contraction < 1.0));
        out.criteria.push_back(criterion("mismatch largest rise", rise, 1e-12 * scale, "<=", mono));
        out.report = {{"experiment", "waveop"}, {"update_norms", rep.update_norms},
                      {"contraction", rep.contraction}, {"tail_estimate", rep.tail_estimate}};
    } catch (const NoContraction& e) {
        out.criteria.push_back(criterion("contraction factor", kInf, 1.0, "<", false));
        out.report = {{"experiment", "waveop"}, {"error", e.what()}};
    }
    return out;
}

// --- wrappers over the acceptance pipelines ---------------------------------------------------

CommandOutput from_result(const CriterionResult& r, const std::string& experiment, const ExperimentConfig& c) {
    CommandOutput out;
    out.criteria.push_back(r);
    out.report = {{"experiment", experiment}, {"params", c.raw}, {"value", r.value}, {"tolerance_pass", r.pass},
                  {"details", r.details}};
    return out;
}

CommandOutput cmd_smoothing(const ExperimentConfig& c, const std::string&) {
    if (c.eq.k != 3) throw std::invalid_argument("smoothing is posed for eq.k = 3");
    SmoothingRunOptions o;
    o.alpha = c.eq.alpha;
    o.s = c.init.s;
    o.n = c.grid.n;
    o.L = c.grid.L;
    o.rms = c.init.amplitude;
    o.seed = c.init.seed;
    o.dt = c.time.dt;
    o.T = c.time.t_end;
    o.samples = opt<int>(c, "smoothing.samples", 200);
    return from_result(check_smoothing(o), "smoothing", c);
}

CommandOutput cmd_imethod(const ExperimentConfig& c, const std::string& dir) {
    if (c.eq.k != 3) throw std::invalid_argument("imethod is posed for eq.k = 3");
    ImethodRunOptions o;
    o.alpha = c.eq.alpha;
    o.s = c.init.s;
    o.n = c.grid.n;
    o.L = c.grid.L;
    o.rms = c.init.amplitude;
    o.seed = c.init.seed;
    o.dt = c.time.dt;
    o.T = c.time.t_end;
    o.N_list = opt<std::vector<double>>(c, "imethod.N", o.N_list);
    o.slope_tol = opt<double>(c, "imethod.tol", o.slope_tol);
    o.companion_run = opt<bool>(c, "imethod.companion", true);
    CommandOutput out = from_result(check_imethod(o), "imethod", c);
    const auto& d = out.criteria.front().details;
    if (d.contains("increments")) {
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < o.N_list.size(); ++i) rows.push_back({o.N_list[i], d["increments"][i].get<double>()});
        write_csv(dir + "/increments.csv", {"N", "increment"}, rows);
        out.report["fitted_slope"] = out.criteria.front().value;
        out.report["samples"] = o.N_list.size();
    }
    return out;
}

CommandOutput cmd_frm(const ExperimentConfig& c, const std::string& dir) {
    FrmRunOptions o;
    o.alphas = opt<std::vector<double>>(c, "frm.alphas", o.alphas);
    o.s_offset = opt<double>(c, "frm.s_offset", o.s_offset);
    o.include_cs = opt<bool>(c, "frm.include_cs", true);
    o.include_level_band = opt<bool>(c, "frm.include_level_band", true);
    o.tol = opt<double>(c, "frm.tol", o.tol);
    CommandOutput out = from_result(check_frm(o), "frm", c);
    for (const auto& s : out.criteria.front().details["sweeps"]) {
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < s["M_grid"].size(); ++i)
            rows.push_back({s["M_grid"][i].get<double>(), s["sup_values"][i].get<double>()});
        char name[96];
        std::snprintf(name, sizeof name, "/frm_%s_alpha%.3g.csv", s["integral"].get<std::string>().c_str(),
                      s["alpha"].get<double>());
        write_csv(dir + name, {"M", "sup"}, rows);
    }
    out.report["sweeps"] = out.criteria.front().details["sweeps"];
    return out;
}

CommandOutput cmd_strichartz(const ExperimentConfig& c, const std::string&) {
    const double p = opt_real(c, "strichartz.p", kInf);
    const double q = opt_real(c, "strichartz.q", 2.0);
    const double alpha = c.eq.alpha;
    const auto tri = strichartz_gamma(p, q, alpha);
    const double sk = critical_index(alpha, c.eq.k);
    const double s = opt_real(c, "strichartz.s", sk);
    json rep = {{"experiment", "strichartz"},
                {"alpha", alpha},
                {"k", c.eq.k},
                {"p", std::isinf(p) ? json("inf") : json(p)},
                {"q", std::isinf(q) ? json("inf") : json(q)},
                {"gamma", tri.gamma},
                {"critical_index", sk},
                {"subcritical_range_end", subcritical_range_end(alpha, c.eq.k)}};
    std::printf("gamma = %.17g\n", tri.gamma);
    std::printf("s_k = %.17g\n", sk);
    try {
        const auto [ps, qs] = scattering_exponents(s, alpha, c.eq.k);
        rep["scattering_exponents"] = {{"s", s}, {"p", ps}, {"q", qs}};
        std::printf("scattering exponents at s = %.6g: p = %.17g, q = %.17g\n", s, ps, qs);
    } catch (const std::exception& e) {
        rep["scattering_exponents"] = {{"s", s}, {"error", e.what()}};
    }
    if (alpha > 1.0) {
        const auto re = resolution_exponents(alpha);
        rep["resolution_exponents"] = {{"pX", re.pX}, {"qX", re.qX}, {"pN", re.pN}, {"qN", re.qN}};
        std::printf("resolution space: (%.17g, %.17g), nonlinearity space: (%.17g, %.17g)\n", re.pX, re.qX, re.pN,
                    re.qN);
    }
    CommandOutput out;
    out.criteria.push_back(criterion("admissible triple", tri.gamma, 0.0, "computed", true));
    out.report = rep;
    return out;
}

// --- sweep --------------------------------------------------------------------------------

CommandOutput cmd_sweep(const ExperimentConfig& c, const std::string& dir) {
    const json sw = get_path(c.raw, "sweep", json::object());
    const std::string target = sw.value("command", "evolve");
    if (target == "sweep") throw std::invalid_argument("sweep.command cannot be sweep");
    const Command& cmd = find_command(target);
    const json values = sw.value("values", json::object());
    if (!values.is_object() || values.empty()) throw std::invalid_argument("sweep.values must map keys to lists");

    // cartesian product of the listed values, keys in sorted order
    std::vector<json> runs{json::object()};
    for (const auto& [key, list] : values.items()) {
        if (!list.is_array() || list.empty()) throw std::invalid_argument("sweep.values." + key + " must be a list");
        std::vector<json> next;
        for (const auto& r : runs)
            for (const auto& v : list) {
                json o = r;
                o[key] = v;
                next.push_back(o);
            }
        runs = std::move(next);
    }
    json base = c.raw;
    base.erase("sweep");
    const int jobs = std::max(1, sw.value("jobs", static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))));

    std::vector<int> codes(runs.size(), 0);
    std::vector<std::string> dirs(runs.size());
    std::mutex mu;
    size_t next_run = 0;
    auto worker = [&]() {
        for (;;) {
            size_t i;
            {
                std::lock_guard<std::mutex> lk(mu);
                if (next_run >= runs.size()) return;
                i = next_run++;
            }
            json doc = merge_config(cmd, base, json::object());
            for (const auto& [key, v] : runs[i].items()) set_path(doc, key, v);
            char name[32];
            std::snprintf(name, sizeof name, "/run_%03zu", i);
            dirs[i] = dir + name;
            doc["output_dir"] = dirs[i];
            codes[i] = execute(cmd, doc, true);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::min<int>(jobs, static_cast<int>(runs.size())); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    CommandOutput out;
    json listing = json::array();
    for (size_t i = 0; i < runs.size(); ++i) {
        out.criteria.push_back(criterion("run " + std::to_string(i), codes[i], 0.0, "==", codes[i] == 0));
        listing.push_back({{"dir", fs::path(dirs[i]).filename().string()}, {"overrides", runs[i]}, {"exit_code", codes[i]}});
    }
    out.report = {{"experiment", "sweep"}, {"command", target}, {"runs", listing}};
    return out;
}

json section(std::initializer_list<std::pair<const std::string, json>> kv) { return json(std::map<std::string, json>(kv)); }

}  // namespace

const std::vector<FlagSpec>& common_flags() {
    static const std::vector<FlagSpec> f{
        {"--n", "grid.n", FlagSpec::Int, "number of grid points (even)"},
        {"--L", "grid.L", FlagSpec::Real, "period of the box"},
        {"--alpha", "eq.alpha", FlagSpec::Real, "dispersion order"},
        {"--k", "eq.k", FlagSpec::Int, "nonlinearity power"},
        {"--mu", "eq.mu", FlagSpec::Real, "nonlinear coupling"},
        {"--init", "init.type", FlagSpec::Text, "gaussian | random_hs | band_limited | file | zero"},
        {"--amplitude", "init.amplitude", FlagSpec::Real, "gaussian peak or random_hs rms"},
        {"--width", "init.width", FlagSpec::Real, "gaussian width"},
        {"--s", "init.s", FlagSpec::Real, "Sobolev regularity of random data"},
        {"--seed", "init.seed", FlagSpec::Int, "random seed"},
        {"--max-mode", "init.max_mode", FlagSpec::Int, "highest random mode (0: dealias cutoff)"},
        {"--path", "init.path", FlagSpec::Text, "stored field stem for init.type = file"},
        {"--dt", "time.dt", FlagSpec::Real, "time step"},
        {"--t-end", "time.t_end", FlagSpec::Real, "final time"},
        {"--adapt", "time.adapt", FlagSpec::Bool, "adaptive step (true/false)"},
        {"--diagnostics-every", "time.diagnostics_every", FlagSpec::Int, "steps between diagnostics rows"},
        {"--observers", "observers", FlagSpec::TextList, "comma separated diagnostics"},
        {"--output-dir", "output_dir", FlagSpec::Text, "run directory (default $DGBO_OUTPUT_DIR)"},
    };
    return f;
}

const std::vector<Command>& command_table() {
    static const std::vector<Command> table{
        {"evolve",
         "nonlinear run with diagnostics CSV",
         json::object(),
         {{"--checkpoint-every", "evolve.checkpoint_every", FlagSpec::Real, "time between checkpoints (0: off)"},
          {"--mass-tol", "evolve.mass_tol", FlagSpec::Real, "tolerance on relative mass drift"}},
         cmd_evolve},
        {"linear",
         "free flow with dispersive decay fit",
         json{{"grid", {{"n", 16384}, {"L", 4096.0}}}, {"init", {{"amplitude", 1.0}}}, {"time", {{"t_end", 100.0}}}},
         {{"--samples", "linear.samples", FlagSpec::Int, "log-spaced sample times"},
          {"--tol", "linear.tol", FlagSpec::Real, "tolerance on the slope error"}},
         cmd_linear},
        {"picard",
         "Picard iteration cross-checked against the time stepper",
         json{{"time", {{"dt", 1e-4}, {"t_end", 0.1}}}},
         {{"--T", "picard.T", FlagSpec::Real, "horizon"},
          {"--iter", "picard.n_iter", FlagSpec::Int, "iterations"},
          {"--quad", "picard.n_quad", FlagSpec::Int, "quadrature intervals"},
          {"--tol", "picard.tol", FlagSpec::Real, "tolerance on the gap"}},
         cmd_picard},
        {"waveop",
         "wave operator construction from an asymptotic state",
         json{{"grid", {{"n", 1024}, {"L", 128.0}}}, {"init", {{"amplitude", 0.05}, {"width", 4.0}}}},
         {{"--T0", "waveop.T0", FlagSpec::Real, "start of the window"},
          {"--Tmax", "waveop.T_max", FlagSpec::Real, "end of the window"},
          {"--iter", "waveop.n_iter", FlagSpec::Int, "iterations"},
          {"--quad", "waveop.n_quad", FlagSpec::Int, "quadrature intervals"}},
         cmd_waveop},
        {"smoothing",
         "Duhamel smoothing gain for k = 3",
         json{{"grid", {{"n", 2048}, {"L", 64.0}}},
              {"eq", {{"k", 3}}},
              {"init", {{"type", "random_hs"}, {"s", 0.25}, {"amplitude", 0.3}}},
              {"time", {{"dt", 5e-4}, {"t_end", 1.0}}}},
         {{"--samples", "smoothing.samples", FlagSpec::Int, "snapshots over the run"}},
         cmd_smoothing},
        {"imethod",
         "almost conservation of the I_N-modified L2 norm for k = 3",
         json{{"grid", {{"n", 2048}, {"L", 2.0 * std::numbers::pi}}},
              {"eq", {{"k", 3}}},
              {"init", {{"type", "random_hs"}, {"s", -0.1}, {"amplitude", 0.1}}},
              {"time", {{"dt", 1.25e-6}, {"t_end", 1.0}}}},
         {{"--N", "imethod.N", FlagSpec::RealList, "comma separated geometric list of N"},
          {"--tol", "imethod.tol", FlagSpec::Real, "largest acceptable fitted slope"},
          {"--companion", "imethod.companion", FlagSpec::Bool, "repeat at 2 dt (true/false)"}},
         cmd_imethod},
        {"frm",
         "frequency-restricted integral sweeps and M-slope fits",
         json::object(),
         {{"--alphas", "frm.alphas", FlagSpec::RealList, "comma separated alpha values"},
          {"--s-offset", "frm.s_offset", FlagSpec::Real, "s - s_3"},
          {"--include-cs", "frm.include_cs", FlagSpec::Bool, "include the bounded-region integral"},
          {"--include-level-band", "frm.include_level_band", FlagSpec::Bool, "include the level band area"}},
         cmd_frm},
        {"strichartz",
         "exponent calculator",
         json::object(),
         {{"--p", "strichartz.p", FlagSpec::Text, "space exponent (number or inf)"},
          {"--q", "strichartz.q", FlagSpec::Text, "time exponent (number or inf)"},
          {"--s-scatter", "strichartz.s", FlagSpec::Real, "regularity for the scattering exponents"}},
         cmd_strichartz},
        {"sweep",
         "runs another command over a grid of config values",
         json::object(),
         {{"--jobs", "sweep.jobs", FlagSpec::Int, "parallel runs"}},
         cmd_sweep},
    };
    return table;
}

const Command& find_command(const std::string& name) {
    for (const auto& c : command_table())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown command " + name);
}

namespace {

void merge_into(json& dst, const json& src) {
    for (const auto& [k, v] : src.items()) {
        if (v.is_object() && dst.contains(k) && dst[k].is_object())
            merge_into(dst[k], v);
        else
            dst[k] = v;
    }
}

}  // namespace

json merge_config(const Command& cmd, const json& file_doc, const json& overrides) {
    json doc = cmd.defaults.is_object() ? cmd.defaults : json::object();
    merge_into(doc, file_doc);
    merge_into(doc, overrides);
    return doc;
}

int execute(const Command& cmd, const json& doc, bool quiet) {
    json manifest = {{"command", cmd.name}, {"config", doc}, {"version", DGBO_VERSION}, {"start", utc_now()}};
    std::string dir;
    int code = 0;
    try {
        const ExperimentConfig cfg = parse_config(doc);
        dir = resolve_output_dir(cfg);
        fs::create_directories(dir);
        CommandOutput out = cmd.run(cfg, dir);
        json crit = json::array();
        bool all = true;
        for (const auto& r : out.criteria) {
            all = all && r.pass;
            crit.push_back({{"name", r.name}, {"value", r.value}, {"tolerance", r.tolerance},
                            {"relation", r.relation}, {"pass", r.pass}});
            if (!quiet)
                std::printf("[%s] %s: %.6g %s %.6g\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.value,
                            r.relation.c_str(), r.tolerance);
        }
        io::write_text_atomic(dir + "/report.json", out.report.dump(2) + "\n");
        manifest["criteria"] = crit;
        manifest["pass"] = all;
        code = all ? 0 : 1;
    } catch (const std::exception& e) {
        manifest["error"] = e.what();
        manifest["pass"] = false;
        std::fprintf(stderr, "%s: %s\n", cmd.name.c_str(), e.what());
        code = 2;
        if (dir.empty()) {
            const char* env = std::getenv("DGBO_OUTPUT_DIR");
            dir = doc.contains("output_dir") && doc["output_dir"].is_string() ? doc["output_dir"].get<std::string>()
                  : env && *env                                              ? std::string(env)
                                                                             : std::string("dgbo_out");
            std::error_code ec;
            fs::create_directories(dir, ec);
        }
    }
    manifest["end"] = utc_now();
    if (!dir.empty()) {
        try {
            io::write_text_atomic(dir + "/manifest.json", manifest.dump(2) + "\n");
        } catch (const std::exception& e) {
            std::fprintf(stderr, "cannot write manifest: %s\n", e.what());
            code = 2;
        }
    }
    return code;
}

}  // namespace dgbo::cli
