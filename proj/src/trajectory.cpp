#include "dgbo/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgbo {

void Trajectory::validate() const {
    if (times.empty() || times.size() != fields.size()) throw std::invalid_argument("trajectory: empty or mismatched");
    for (size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("trajectory: times must increase strictly");
        if (fields[i].grid() != fields[0].grid()) throw std::invalid_argument("trajectory: grids differ");
    }
}

std::vector<double> uniform_times(double t0, double t1, int intervals) {
    if (intervals < 1) throw std::invalid_argument("uniform_times: need at least one interval");
    std::vector<double> t(intervals + 1);
    for (int i = 0; i <= intervals; ++i) t[i] = t0 + (t1 - t0) * i / intervals;
    t.back() = t1;
    return t;
}

Trajectory sample_run(const Field& u0, const EquationParams& p, SolverConfig cfg, const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0) throw std::invalid_argument("sample_run: times must start at 0");
    Trajectory tr;
    tr.params = p;
    if (times.size() == 1) {
        tr.times = times;
        tr.fields = {u0};
        return tr;
    }
    cfg.t_end = times.back();
    cfg.land_on = times;
    cfg.dt = std::min(cfg.dt, cfg.t_end);
    size_t next = 0;
    auto obs = [&](const SolverState& s) {
        const double tol = 1e-9 * std::max(1.0, s.t);
        if (next < times.size() && std::abs(times[next] - s.t) <= tol) {
            tr.times.push_back(times[next]);
            tr.fields.push_back(s.field);
            ++next;
        }
    };
    run(u0, p, cfg, {obs});
    if (tr.times.size() != times.size()) throw std::logic_error("sample_run: missed a sample time");
    return tr;
}

Trajectory linear_trajectory(const Field& f, const EquationParams& p, const std::vector<double>& times) {
    Trajectory tr;
    tr.params = p;
    tr.times = times;
    for (double t : times) tr.fields.push_back(free_evolve(f, t, p.alpha));
    return tr;
}

double sup_l2_gap(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sup_l2_gap: size mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i])))
            throw std::invalid_argument("sup_l2_gap: sample times differ");
        m = std::max(m, l2_distance(a.fields[i], b.fields[i]));
    }
    return m;
}

}  // namespace dgbo
