#include "dgbo/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dgbo/analysis.hpp"
#include "dgbo/fft.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (dt > t_end) throw std::invalid_argument("dt must not exceed t_end");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw std::invalid_argument("cfl_safety must lie in (0, 1]");
    if (dealias_degree != 0 && dealias_degree < 2) throw std::invalid_argument("dealias degree must be >= 2");
}

namespace {
std::string blowup_message(double t, double m) {
    std::ostringstream os;
    os << "numerical blow-up at t = " << t << " (last max|u| = " << m << ")";
    return os.str();
}
}  // namespace

BlowupError::BlowupError(double t_, double m_) : std::runtime_error(blowup_message(t_, m_)), t(t_), max_abs(m_) {}

Integrator::Integrator(const Grid& g, const EquationParams& p, int dealias_degree) : g_(g), p_(p) {
    p_.validate();
    const int deg = dealias_degree == 0 ? p.k + 1 : dealias_degree;
    K_ = dealias_cutoff(g.n, deg);
    nh_ = g.n / 2 + 1;
    xi_.resize(nh_);
    omega_.resize(nh_);
    for (int j = 0; j < nh_; ++j) {
        xi_[j] = g.wavenumber(j);
        omega_[j] = g.is_nyquist(j) ? 0.0 : dispersion(xi_[j], p.alpha);
    }
    a_.assign(nh_, 0.0);
    E_.assign(nh_, 1.0);
    E2_.assign(nh_, 1.0);
    k1_.assign(nh_, 0.0);
    k2_ = k3_ = k4_ = tmp_ = stage_ = k1_;
    u_.assign(g.n, 0.0);
}

void Integrator::load(const Field& u) {
    if (u.grid() != g_) throw std::invalid_argument("integrator: grid mismatch");
    for (int j = 0; j < nh_; ++j) a_[j] = u.coeff(j);
    // the mean and Nyquist modes of a real field are real
    a_[0] = a_[0].real();
    a_[nh_ - 1] = a_[nh_ - 1].real();
}

Field Integrator::field() const {
    const int n = g_.n;
    std::vector<cplx> c(n);
    for (int j = 0; j < nh_; ++j) c[j] = a_[j];
    for (int j = 1; j < n / 2; ++j) c[n - j] = std::conj(a_[j]);
    return Field::from_coeffs(g_, std::move(c));
}

double Integrator::mass() const {
    double s = std::norm(a_[0]) + std::norm(a_[nh_ - 1]);
    for (int j = 1; j < nh_ - 1; ++j) s += 2.0 * std::norm(a_[j]);
    const double n = g_.n;
    return g_.L * s / (n * n);
}

void Integrator::set_exponentials(double h) {
    if (h == h_cached_) return;
    for (int j = 0; j < nh_; ++j) {
        const double ph = -0.5 * h * omega_[j];
        E2_[j] = cplx(std::cos(ph), std::sin(ph));
        E_[j] = E2_[j] * E2_[j];
    }
    h_cached_ = h;
}

void Integrator::nonlinearity(const cplx* in, cplx* out) {
    const int n = g_.n;
    for (int j = 0; j < nh_; ++j) tmp_[j] = j <= K_ ? in[j] : cplx(0.0);
    fft::irfft(tmp_.data(), u_.data(), n);
    const int power = p_.k + 1;
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = u_[i];
        m = std::max(m, std::abs(v));
        double w = v;
        for (int r = 1; r < power; ++r) w *= v;
        u_[i] = w;
    }
    if (!std::isfinite(m)) finite_ = false;
    else max_abs_ = m;
    fft::rfft(u_.data(), out, n);
    const double c = -p_.mu / (p_.k + 1);
    for (int j = 0; j < nh_; ++j) out[j] = j <= K_ ? c * cplx(0.0, xi_[j]) * out[j] : cplx(0.0);
}

void Integrator::step(double h) {
    set_exponentials(h);
    finite_ = true;
    const int nh = nh_;
    nonlinearity(a_.data(), k1_.data());
    std::vector<cplx>& b = stage_;
    for (int j = 0; j < nh; ++j) b[j] = E2_[j] * (a_[j] + 0.5 * h * k1_[j]);
    nonlinearity(b.data(), k2_.data());
    for (int j = 0; j < nh; ++j) b[j] = E2_[j] * a_[j] + 0.5 * h * k2_[j];
    nonlinearity(b.data(), k3_.data());
    for (int j = 0; j < nh; ++j) b[j] = E_[j] * a_[j] + h * E2_[j] * k3_[j];
    nonlinearity(b.data(), k4_.data());
    for (int j = 0; j < nh; ++j)
        a_[j] = E_[j] * a_[j] + (h / 6.0) * (E_[j] * k1_[j] + 2.0 * E2_[j] * (k2_[j] + k3_[j]) + k4_[j]);
    if (!finite_) return;
    for (int j = 0; j < nh; ++j)
        if (!std::isfinite(a_[j].real()) || !std::isfinite(a_[j].imag())) {
            finite_ = false;
            return;
        }
}

Field nonlinearity(const Field& f, const EquationParams& p, int dealias_degree) {
    Integrator it(f.grid(), p, dealias_degree);
    const int n = f.size();
    std::vector<cplx> in(n / 2 + 1), out(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) in[j] = f.coeff(j);
    it.nonlinearity(in.data(), out.data());
    std::vector<cplx> c(n);
    for (int j = 0; j <= n / 2; ++j) c[j] = out[j];
    for (int j = 1; j < n / 2; ++j) c[n - j] = std::conj(out[j]);
    return Field::from_coeffs(f.grid(), std::move(c));
}

SolverState initial_state(const Field& u0, const EquationParams& p) {
    p.validate();
    SolverState s;
    s.t = 0.0;
    s.field = u0;
    s.params = p;
    s.mass0 = mass(u0);
    s.energy0 = energy(u0, p);
    return s;
}

SolverState step(const SolverState& s, double dt, int dealias_degree) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    Integrator it(s.field.grid(), s.params, dealias_degree);
    it.load(s.field);
    const double m0 = s.field.max_abs();
    it.step(dt);
    SolverState out = s;
    out.field = it.field();
    if (!std::isfinite(out.field.max_abs())) throw BlowupError(s.t + dt, m0);
    out.t = s.t + dt;
    out.steps = s.steps + 1;
    out.last_dt = dt;
    return out;
}

DiagnosticsRow diagnostics_row(const SolverState& s) {
    const Field& u = s.field;
    const double sk = critical_index(s.params.alpha, s.params.k);
    return {s.t,
            s.last_dt,
            mass(u),
            energy(u, s.params),
            l2_norm(u),
            homogeneous_norm_off_mean(u, sk),
            u.max_abs(),
            u.imag_residue()};
}

RunResult run(const Field& u0, const EquationParams& p, const SolverConfig& cfg, const std::vector<Observer>& observers) {
    cfg.validate();
    p.validate();
    RunResult res;
    SolverState st = initial_state(u0, p);
    Integrator it(u0.grid(), p, cfg.dealias_degree);
    it.load(u0);

    std::vector<double> stops = cfg.land_on;
    stops.push_back(cfg.t_end);
    std::sort(stops.begin(), stops.end());

    const bool need_field = !observers.empty() || cfg.diagnostics_every > 0;
    if (cfg.diagnostics_every > 0) res.diagnostics.push_back(diagnostics_row(st));
    for (const auto& ob : observers) ob(st);

    const double dx = u0.grid().dx();
    double max_abs = u0.max_abs();
    size_t next_stop = 0;
    double t = 0.0;
    const double eps = 1e-12 * std::max(1.0, cfg.t_end);
    while (t < cfg.t_end - eps) {
        while (next_stop < stops.size() && stops[next_stop] <= t + eps) ++next_stop;
        const double target = next_stop < stops.size() ? stops[next_stop] : cfg.t_end;
        double h = cfg.dt;
        if (cfg.adapt) h = std::min(h, cfg.cfl_safety * dx / std::max(1.0, std::pow(max_abs, p.k)));
        bool landed = false;
        if (t + h >= target - eps) {
            h = target - t;
            landed = true;
        }
        it.step(h);
        if (!it.finite()) throw BlowupError(t, max_abs);
        t = landed ? target : t + h;
        st.steps += 1;
        st.last_dt = h;
        st.t = t;
        // the integrator's own max|u| is from the first stage; refresh from the new state
        if (need_field || cfg.adapt) {
            st.field = it.field();
            max_abs = st.field.max_abs();
            if (!std::isfinite(max_abs)) throw BlowupError(t, it.last_max_abs());
        } else {
            max_abs = it.last_max_abs();
        }
        if (cfg.diagnostics_every > 0 && (st.steps % cfg.diagnostics_every == 0 || t >= cfg.t_end - eps))
            res.diagnostics.push_back(diagnostics_row(st));
        for (const auto& ob : observers) ob(st);
    }
    st.field = it.field();
    if (!std::isfinite(st.field.max_abs())) throw BlowupError(t, max_abs);
    res.final_state = st;
    return res;
}

PropagationReport propagation_check(const Field& u0, double s_hi, const EquationParams& p, const SolverConfig& cfg,
                                    double data_regularity) {
    PropagationReport rep;
    const double sk = critical_index(p.alpha, p.k);
    if (data_regularity < sk) {
        rep.within_hypotheses = false;
        rep.note = "outside the well-posedness range: data regularity below the critical index";
    }
    rep.initial = homogeneous_norm_off_mean(u0, s_hi);
    rep.sup = rep.initial;
    run(u0, p, cfg, {[&](const SolverState& s) { rep.sup = std::max(rep.sup, homogeneous_norm_off_mean(s.field, s_hi)); }});
    rep.ratio = rep.initial > 0.0 ? rep.sup / rep.initial : 1.0;
    return rep;
}

}  // namespace dgbo
