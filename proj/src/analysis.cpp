#include "dgbo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgbo/fit.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo {

double mass(const Field& f) {
    const double l2 = l2_norm(f);
    return l2 * l2;
}

Field field_power(const Field& f, int power, int refine) {
    if (power < 1 || refine < 1) throw std::invalid_argument("field_power: bad arguments");
    Field fine = f.resample(refine * f.size());
    std::vector<double> v(fine.values());
    for (double& x : v) {
        const double b = x;
        for (int r = 1; r < power; ++r) x *= b;
    }
    return Field::from_values(fine.grid(), std::move(v));
}

double power_integral(const Field& f, int power) {
    const int refine = power / 2 + 1;
    Field fine = f.resample(refine * f.size());
    double acc = 0.0;
    for (double x : fine.values()) {
        double w = x;
        for (int r = 1; r < power; ++r) w *= x;
        acc += w;
    }
    return acc * fine.grid().dx();
}

double energy(const Field& f, const EquationParams& p, EnergyForm form) {
    const Grid& g = f.grid();
    double kin = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double xi = g.wavenumber(j);
        if (xi == 0.0) continue;
        kin += std::pow(std::abs(xi), p.alpha) * std::norm(f.coeff(j));
    }
    const double n = g.n;
    kin *= 0.5 * g.L / (n * n);
    const double pot = power_integral(f, p.k + 2);
    if (form == EnergyForm::Hamiltonian) return kin + p.mu / ((p.k + 1.0) * (p.k + 2.0)) * pot;
    return kin - p.mu / (p.k + 2.0) * pot;
}

Field rescale(const Field& f, double lambda, const EquationParams& p) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rescale: lambda must be positive");
    if (lambda == 1.0) return f;
    Grid g(f.size(), lambda * f.grid().L);
    const double amp = std::pow(lambda, -p.alpha / p.k);
    // node j of the dilated grid sits at lambda * x_j, where u(x / lambda) = u(x_j)
    std::vector<cplx> c(f.coeffs());
    for (auto& z : c) z *= amp;
    return Field::from_coeffs(g, std::move(c));
}

MixedNormAccumulator::MixedNormAccumulator(const Grid& g, double p, double q, double deriv_order)
    : g_(g), p_(p), q_(q), order_(deriv_order) {
    if (!(p >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("mixed norm exponents must be >= 1");
    if (deriv_order < 0.0) throw std::invalid_argument("mixed norm derivative order must be >= 0");
    per_x_.assign(g.n, 0.0);
}

std::vector<double> MixedNormAccumulator::sample(const Field& u) const {
    if (u.grid() != g_) throw std::invalid_argument("mixed norm: grid mismatch");
    std::vector<double> a(g_.n);
    if (order_ == 0.0) {
        for (int j = 0; j < g_.n; ++j) a[j] = std::abs(u.value(j));
    } else {
        Field d = fractional_derivative(u, order_);
        for (int j = 0; j < g_.n; ++j) a[j] = std::abs(d.value(j));
    }
    if (!std::isinf(q_))
        for (double& x : a) x = std::pow(x, q_);
    return a;
}

void MixedNormAccumulator::add(double t, const Field& u) {
    std::vector<double> a = sample(u);
    if (count_ > 0 && !(t > t_)) throw std::invalid_argument("mixed norm: times must increase");
    if (std::isinf(q_)) {
        for (int j = 0; j < g_.n; ++j) per_x_[j] = std::max(per_x_[j], a[j]);
    } else if (count_ > 0) {
        const double h = 0.5 * (t - t_);
        for (int j = 0; j < g_.n; ++j) per_x_[j] += h * (prev_[j] + a[j]);
    }
    if (count_ == 0) t0_ = t;
    prev_ = std::move(a);
    t_ = t;
    ++count_;
}

double MixedNormAccumulator::value() const {
    const double dx = g_.dx();
    double acc = 0.0;
    for (int j = 0; j < g_.n; ++j) {
        const double tn = std::isinf(q_) ? per_x_[j] : std::pow(per_x_[j], 1.0 / q_);
        if (std::isinf(p_)) acc = std::max(acc, tn);
        else acc += dx * std::pow(tn, p_);
    }
    return std::isinf(p_) ? acc : std::pow(acc, 1.0 / p_);
}

double mixed_norm(const Trajectory& tr, double p, double q, double deriv_order) {
    tr.validate();
    MixedNormAccumulator acc(tr.grid(), p, q, deriv_order);
    for (size_t i = 0; i < tr.size(); ++i) acc.add(tr.times[i], tr.fields[i]);
    return acc.value();
}

double mixed_norm_S(const Trajectory& tr, double s, const EquationParams& p) {
    auto [ps, qs] = scattering_exponents(s, p.alpha, p.k);
    return mixed_norm(tr, ps, qs, 0.0);
}

double mixed_norm_X2(const Trajectory& tr, double s, const EquationParams& p) {
    auto e = resolution_exponents(p.alpha);
    if (s + 0.5 < 0.0) throw std::invalid_argument("resolution norm needs s >= -1/2");
    return mixed_norm(tr, e.pX, e.qX, s + 0.5);
}

double mixed_norm_N(const Trajectory& g, double s, const EquationParams& p) {
    auto e = resolution_exponents(p.alpha);
    if (s + 0.5 < 0.0) throw std::invalid_argument("nonlinearity norm needs s >= -1/2");
    return mixed_norm(g, e.pN, e.qN, s + 0.5);
}

double resolution_norm(const Trajectory& tr, double s, const EquationParams& p) {
    double sup = 0.0;
    for (const auto& f : tr.fields) sup = std::max(sup, homogeneous_norm_off_mean(f, s));
    return std::max(sup, mixed_norm_X2(tr, s, p));
}

namespace {

// off-mean homogeneous norm of a half spectrum
double half_norm(const std::vector<cplx>& h, const Grid& g, double s) {
    const int nh = g.n / 2 + 1;
    double acc = 0.0;
    for (int j = 1; j < nh; ++j) {
        const double w = (j == nh - 1) ? 1.0 : 2.0;
        acc += w * std::pow(std::abs(g.wavenumber(j)), 2.0 * s) * std::norm(h[j]);
    }
    const double n = g.n;
    return std::sqrt(g.L * acc / (n * n));
}

std::vector<cplx> half_of(const Field& f) {
    const int nh = f.size() / 2 + 1;
    return std::vector<cplx>(f.coeffs().begin(), f.coeffs().begin() + nh);
}

void rotate_back(std::vector<cplx>& h, const Grid& g, double t, double alpha) {
    // multiply by exp(+i t omega), i.e. apply V(-t)
    const int nh = g.n / 2 + 1;
    for (int j = 0; j < nh; ++j) {
        if (g.is_nyquist(j)) continue;
        const double ph = t * dispersion(g.wavenumber(j), alpha);
        h[j] *= cplx(std::cos(ph), std::sin(ph));
    }
}

}  // namespace

ScatteringMonitor::ScatteringMonitor(const Grid& g, const EquationParams& p, std::vector<double> sample_times,
                                     double tail_tol)
    : g_(g), p_(p), sample_times_(std::move(sample_times)), tail_tol_(tail_tol) {
    sk_ = critical_index(p.alpha, p.k);
    std::sort(sample_times_.begin(), sample_times_.end());
    acc_.assign(g.n / 2 + 1, 0.0);
}

std::vector<cplx> ScatteringMonitor::integrand(const SolverState& s) const {
    Field nl = nonlinearity(s.field, p_);
    std::vector<cplx> h = half_of(nl);
    rotate_back(h, g_, s.t, p_.alpha);
    return h;
}

void ScatteringMonitor::observe(const SolverState& s) {
    if (ts_.empty() && rec_t_.empty() && u0_.empty()) u0_ = half_of(s.field);
    last_w_ = half_of(s.field);
    rotate_back(last_w_, g_, s.t, p_.alpha);
    auto f = integrand(s);
    ts_.push_back(s.t);
    fs_.push_back(std::move(f));
    if (ts_.size() == 3) {
        const double h0 = ts_[1] - ts_[0], h1 = ts_[2] - ts_[1];
        const double c0 = (h0 + h1) / 6.0 * (2.0 - h1 / h0);
        const double c1 = (h0 + h1) / 6.0 * (h0 + h1) * (h0 + h1) / (h0 * h1);
        const double c2 = (h0 + h1) / 6.0 * (2.0 - h0 / h1);
        for (size_t j = 0; j < acc_.size(); ++j) acc_[j] += c0 * fs_[0][j] + c1 * fs_[1][j] + c2 * fs_[2][j];
        ts_.erase(ts_.begin(), ts_.begin() + 2);
        fs_.erase(fs_.begin(), fs_.begin() + 2);
    }
    const double tol = 1e-9 * std::max(1.0, s.t);
    while (next_sample_ < sample_times_.size() && sample_times_[next_sample_] < s.t - tol) ++next_sample_;
    if (next_sample_ < sample_times_.size() && std::abs(sample_times_[next_sample_] - s.t) <= tol) {
        rec_t_.push_back(s.t);
        rec_w_.push_back(last_w_);
        integrand_t_.push_back(s.t);
        integrand_norm_.push_back(half_norm(fs_.back(), g_, sk_));
        ++next_sample_;
    }
}

ScatteringReport ScatteringMonitor::finish() const {
    if (u0_.empty()) throw std::logic_error("scattering monitor saw no states");
    std::vector<cplx> acc(acc_);
    if (ts_.size() == 2) {
        const double h = ts_[1] - ts_[0];
        for (size_t j = 0; j < acc.size(); ++j) acc[j] += 0.5 * h * (fs_[0][j] + fs_[1][j]);
    }
    // The solver's own steps are a quadrature of the Duhamel integral in the interaction
    // picture, so V(-T)u(T) is u_+ truncated at T. The Simpson sum over accepted steps is
    // kept as an independent check; it degrades when |omega| dt is large.
    const std::vector<cplx>& plus = last_w_;
    std::vector<cplx> quad(u0_);
    for (size_t j = 0; j < quad.size(); ++j) quad[j] += acc[j] - plus[j];

    ScatteringReport rep;
    const int n = g_.n;
    std::vector<cplx> full(n);
    for (int j = 0; j <= n / 2; ++j) full[j] = plus[j];
    for (int j = 1; j < n / 2; ++j) full[n - j] = std::conj(plus[j]);
    full[0] = full[0].real();
    full[n / 2] = full[n / 2].real();
    rep.u_plus = Field::from_coeffs(g_, std::move(full));
    rep.u_plus_norm = half_norm(plus, g_, sk_);
    rep.times = rec_t_;
    for (const auto& w : rec_w_) {
        std::vector<cplx> d(w);
        for (size_t j = 0; j < d.size(); ++j) d[j] -= plus[j];
        rep.mismatch.push_back(half_norm(d, g_, sk_));
    }
    rep.integrand_norm = integrand_norm_;

    rep.quadrature_defect = half_norm(quad, g_, sk_);

    // decay exponent of |N(u(t))| over the second half (diagnostic: the norm bound ignores
    // the oscillation of V(-t) and need not be integrable even when u_+ exists)
    std::vector<double> tt, nn;
    const double T = rec_t_.empty() ? 0.0 : rec_t_.back();
    for (size_t i = 0; i < integrand_t_.size(); ++i)
        if (integrand_t_[i] >= 0.5 * T && integrand_t_[i] > 0.0 && integrand_norm_[i] > 0.0) {
            tt.push_back(integrand_t_[i]);
            nn.push_back(integrand_norm_[i]);
        }
    if (tt.size() >= 3) rep.tail_decay_exponent = -loglog_fit(tt, nn).slope;

    // Tail beyond T from dyadic blocks: B(t) = |V(-2t)u(2t) - V(-t)u(t)|. With r = B(T/2)/B(T/4) < 1,
    // the blocks beyond T sum to about B(T/2) r / (1 - r).
    rep.tail_estimate = kInf;
    auto nearest = [&](double t) {
        size_t best = 0;
        for (size_t i = 1; i < rec_t_.size(); ++i)
            if (std::abs(rec_t_[i] - t) < std::abs(rec_t_[best] - t)) best = i;
        return best;
    };
    if (rec_t_.size() >= 5 && T > 0.0) {
        const size_t i1 = nearest(0.25 * T), i2 = nearest(0.5 * T), i3 = rec_t_.size() - 1;
        if (i1 < i2 && i2 < i3) {
            auto block = [&](size_t a, size_t b) {
                std::vector<cplx> d(rec_w_[b]);
                for (size_t j = 0; j < d.size(); ++j) d[j] -= rec_w_[a][j];
                return half_norm(d, g_, sk_);
            };
            const double b1 = block(i1, i2), b2 = block(i2, i3);
            if (b2 == 0.0) {
                rep.tail_estimate = 0.0;
            } else if (b1 > 0.0 && b2 < b1) {
                const double r = b2 / b1;
                rep.tail_ratio = r;
                rep.tail_estimate = b2 * r / (1.0 - r);
            }
        }
    }
    const bool all_zero = std::all_of(integrand_norm_.begin(), integrand_norm_.end(), [](double v) { return v == 0.0; });
    if (all_zero) rep.tail_estimate = 0.0;
    rep.unresolved_tail = rep.tail_estimate > tail_tol_ * std::max(rep.u_plus_norm, 1e-300);
    if (all_zero) rep.unresolved_tail = false;
    return rep;
}

ScatteringReport scattering_monitor(const Trajectory& tr, double tail_tol) {
    tr.validate();
    ScatteringMonitor mon(tr.grid(), tr.params, tr.times, tail_tol);
    SolverState st;
    st.params = tr.params;
    for (size_t i = 0; i < tr.size(); ++i) {
        st.t = tr.times[i];
        st.field = tr.fields[i];
        mon.observe(st);
    }
    return mon.finish();
}

RatioProbeReport nonlinear_ratio_probe(const std::vector<Trajectory>& ensemble, double s, const EquationParams& p) {
    RatioProbeReport rep;
    const double sk = critical_index(p.alpha, p.k);
    const int refine = (p.k + 1) / 2 + 1;
    for (const auto& tr : ensemble) {
        tr.validate();
        const double S = mixed_norm_S(tr, sk, p);
        const double X = resolution_norm(tr, s, p);
        const double den = std::pow(S, p.k) * X;
        if (!(den > 0.0)) {
            ++rep.skipped;
            continue;
        }
        Trajectory g;
        g.params = tr.params;
        g.times = tr.times;
        for (const auto& f : tr.fields) g.fields.push_back(field_power(f, p.k + 1, refine));
        const double num = mixed_norm_N(g, s, p);
        rep.ratios.push_back(num / den);
        rep.max_ratio = std::max(rep.max_ratio, num / den);
    }
    return rep;
}

double imultiplier_symbol(double xi, double N, double s) {
    const double a = std::abs(xi);
    return a < N ? 1.0 : std::pow(a / N, s);
}

IMultiplier make_I_multiplier(const Grid& g, double N, double s) {
    if (!(N > 1.0)) throw std::invalid_argument("I multiplier needs N > 1");
    if (!(s < 0.0)) throw std::invalid_argument("I multiplier needs s < 0");
    IMultiplier m{N, s, std::vector<double>(g.n)};
    for (int j = 0; j < g.n; ++j) m.table[j] = imultiplier_symbol(g.wavenumber(j), N, s);
    return m;
}

Field apply_I(const Field& f, const IMultiplier& m) {
    if (static_cast<int>(m.table.size()) != f.size()) throw std::invalid_argument("I multiplier size mismatch");
    return apply_multiplier(f, [&m](double, int j) { return cplx(m.table[j]); });
}

double I_energy(const Field& f, const IMultiplier& m) {
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j) acc += m.table[j] * m.table[j] * std::norm(f.coeff(j));
    const double n = f.size();
    return f.grid().L * acc / (n * n);
}

BlowupReport blowup_probe(const std::vector<double>& times, const std::vector<double>& norms,
                          std::optional<double> blowup_time, double s, const EquationParams& p,
                          double window_fraction) {
    BlowupReport rep;
    rep.predicted_exponent = -(s - critical_index(p.alpha, p.k)) / (p.alpha + 1.0);
    if (!blowup_time) {
        rep.note = "no blow-up signal";
        return rep;
    }
    rep.triggered = true;
    rep.t_star = *blowup_time;
    for (size_t i = 0; i < times.size(); ++i) {
        const double d = rep.t_star - times[i];
        if (d > 0.0 && d <= window_fraction * rep.t_star && norms[i] > 0.0) {
            rep.time_to_blowup.push_back(d);
            rep.norms.push_back(norms[i]);
        }
    }
    if (rep.time_to_blowup.size() < 5) {
        rep.note = "insufficient data";
        return rep;
    }
    rep.sufficient = true;
    rep.fitted_exponent = loglog_fit(rep.time_to_blowup, rep.norms).slope;
    rep.note = "exploratory";
    return rep;
}

}  // namespace dgbo
