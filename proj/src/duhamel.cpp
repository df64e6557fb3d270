#include "dgbo/duhamel.hpp"

#include <algorithm>
#include <cmath>

#include "dgbo/fit.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo {
namespace {

using Half = std::vector<cplx>;

Half half_of(const Field& f) { return Half(f.coeffs().begin(), f.coeffs().begin() + f.size() / 2 + 1); }

Field to_field(const Half& h, const Grid& g) {
    const int n = g.n;
    std::vector<cplx> c(n);
    for (int j = 0; j <= n / 2; ++j) c[j] = h[j];
    for (int j = 1; j < n / 2; ++j) c[n - j] = std::conj(h[j]);
    c[0] = c[0].real();
    c[n / 2] = c[n / 2].real();
    return Field::from_coeffs(g, std::move(c));
}

// h <- V(sign * t) h
void rotate(Half& h, const Grid& g, double t, double alpha, double sign) {
    for (size_t j = 0; j < h.size(); ++j) {
        if (g.is_nyquist(static_cast<int>(j))) continue;
        const double ph = -sign * t * dispersion(g.wavenumber(static_cast<int>(j)), alpha);
        h[j] *= cplx(std::cos(ph), std::sin(ph));
    }
}

double half_l2(const Half& h, const Grid& g) {
    const size_t nh = h.size();
    double acc = std::norm(h[0]) + std::norm(h[nh - 1]);
    for (size_t j = 1; j + 1 < nh; ++j) acc += 2.0 * std::norm(h[j]);
    const double n = g.n;
    return std::sqrt(g.L * acc / (n * n));
}

double half_hom(const Half& h, const Grid& g, double s) {
    const size_t nh = h.size();
    double acc = 0.0;
    for (size_t j = 1; j < nh; ++j) {
        const double w = (j + 1 == nh) ? 1.0 : 2.0;
        acc += w * std::pow(std::abs(g.wavenumber(static_cast<int>(j))), 2.0 * s) * std::norm(h[j]);
    }
    const double n = g.n;
    return std::sqrt(g.L * acc / (n * n));
}

void check_divergence(const std::vector<double>& d, double floor) {
    const size_t m = d.size();
    for (double x : d)
        if (!std::isfinite(x)) throw NoContraction("no contraction at this T: non-finite iterate");
    if (m >= 4 && d[m - 4] > floor && d[m - 1] > d[m - 2] && d[m - 2] > d[m - 3] && d[m - 3] > d[m - 4])
        throw NoContraction("no contraction at this T: update norm grew for 3 consecutive iterations");
}

// updates at or below floor are round-off and carry no contraction information
double contraction_of(const std::vector<double>& d, double floor) {
    double c = 0.0;
    for (size_t i = 1; i < d.size(); ++i)
        if (d[i - 1] > floor && d[i] > floor) c = std::max(c, d[i] / d[i - 1]);
    return c;
}

constexpr double kRoundoff = 1e-13;

}  // namespace

std::vector<std::vector<cplx>> cumulative_integral(const std::vector<std::vector<cplx>>& f, double h) {
    const size_t m = f.size();
    if (m < 3) throw std::invalid_argument("cumulative integral needs at least 3 samples");
    const size_t len = f[0].size();
    std::vector<std::vector<cplx>> G(m, std::vector<cplx>(len, 0.0));
    for (size_t j = 0; j < len; ++j) G[1][j] = h / 12.0 * (5.0 * f[0][j] + 8.0 * f[1][j] - f[2][j]);
    for (size_t i = 2; i < m; i += 2)
        for (size_t j = 0; j < len; ++j) G[i][j] = G[i - 2][j] + h / 3.0 * (f[i - 2][j] + 4.0 * f[i - 1][j] + f[i][j]);
    for (size_t i = 3; i < m; i += 2)
        for (size_t j = 0; j < len; ++j)
            G[i][j] = G[i - 3][j] + 3.0 * h / 8.0 * (f[i - 3][j] + 3.0 * f[i - 2][j] + 3.0 * f[i - 1][j] + f[i][j]);
    return G;
}

PicardReport picard_solve(const Field& u0, const EquationParams& p, double T, int n_iter, int n_quad) {
    p.validate();
    if (!(T > 0.0)) throw std::invalid_argument("picard: T must be positive");
    if (n_quad < 2) throw std::invalid_argument("picard: need at least 2 quadrature intervals");
    if (n_iter < 0) throw std::invalid_argument("picard: n_iter must be >= 0");
    const Grid& g = u0.grid();
    const auto times = uniform_times(0.0, T, n_quad);
    const double h = T / n_quad;
    const Half w0 = half_of(u0);
    const size_t m = times.size();

    std::vector<Half> u(m, w0);
    for (size_t i = 0; i < m; ++i) rotate(u[i], g, times[i], p.alpha, +1.0);

    Integrator integ(g, p);
    PicardReport rep;
    double floor = 0.0;
    std::vector<Half> gvals(m, Half(w0.size()));
    for (int it = 0; it < n_iter; ++it) {
        for (size_t i = 0; i < m; ++i) {
            integ.nonlinearity(u[i].data(), gvals[i].data());
            rotate(gvals[i], g, times[i], p.alpha, -1.0);
        }
        auto G = cumulative_integral(gvals, h);
        double upd = 0.0, scale = 0.0;
        for (size_t i = 0; i < m; ++i) {
            Half nu(w0);
            for (size_t j = 0; j < nu.size(); ++j) nu[j] += G[i][j];
            rotate(nu, g, times[i], p.alpha, +1.0);
            Half d(nu);
            for (size_t j = 0; j < d.size(); ++j) d[j] -= u[i][j];
            upd = std::max(upd, half_l2(d, g));
            scale = std::max(scale, half_l2(nu, g));
            u[i] = std::move(nu);
        }
        floor = kRoundoff * scale;
        rep.update_norms.push_back(upd);
        check_divergence(rep.update_norms, floor);
        if (upd <= floor) break;
    }
    rep.contraction = contraction_of(rep.update_norms, floor);
    rep.traj.params = p;
    rep.traj.times = times;
    for (size_t i = 0; i < m; ++i) rep.traj.fields.push_back(to_field(u[i], g));
    return rep;
}

WaveOperatorReport wave_operator(const Field& v0, const EquationParams& p, double T0, double T_max, int n_iter,
                                 int n_quad) {
    p.validate();
    if (!(T_max > T0)) throw std::invalid_argument("wave operator: T_max must exceed T0");
    if (n_quad < 2) throw std::invalid_argument("wave operator: need at least 2 quadrature intervals");
    const Grid& g = v0.grid();
    const auto times = uniform_times(T0, T_max, n_quad);
    const double h = (T_max - T0) / n_quad;
    const size_t m = times.size();
    const double sk = critical_index(p.alpha, p.k);

    const Half a0 = half_of(v0);
    std::vector<Half> freep(m, a0);
    for (size_t i = 0; i < m; ++i) rotate(freep[i], g, times[i], p.alpha, +1.0);
    std::vector<Half> v(m, Half(a0.size(), 0.0));

    Integrator integ(g, p);
    WaveOperatorReport rep;
    double floor = 0.0;
    std::vector<Half> gvals(m, Half(a0.size()));
    std::vector<double> integrand_norm(m, 0.0);
    for (int it = 0; it < n_iter; ++it) {
        for (size_t i = 0; i < m; ++i) {
            Half u(v[i]);
            for (size_t j = 0; j < u.size(); ++j) u[j] += freep[i][j];
            integ.nonlinearity(u.data(), gvals[i].data());
            integrand_norm[i] = half_hom(gvals[i], g, sk);
            rotate(gvals[i], g, times[i], p.alpha, -1.0);
        }
        // integrate backwards from T_max
        std::vector<Half> rev(gvals.rbegin(), gvals.rend());
        auto R = cumulative_integral(rev, h);
        double upd = 0.0, scale = 0.0;
        for (size_t i = 0; i < m; ++i) {
            const Half& Ri = R[m - 1 - i];
            Half nv(Ri.size());
            for (size_t j = 0; j < nv.size(); ++j) nv[j] = -Ri[j];
            rotate(nv, g, times[i], p.alpha, +1.0);
            Half d(nv);
            for (size_t j = 0; j < d.size(); ++j) d[j] -= v[i][j];
            upd = std::max(upd, half_l2(d, g));
            scale = std::max(scale, half_l2(nv, g));
            v[i] = std::move(nv);
        }
        floor = kRoundoff * scale;
        rep.update_norms.push_back(upd);
        check_divergence(rep.update_norms, floor);
        if (upd <= floor) break;
    }
    rep.contraction = contraction_of(rep.update_norms, floor);
    rep.traj.params = p;
    rep.traj.times = times;
    for (size_t i = 0; i < m; ++i) {
        Half u(v[i]);
        for (size_t j = 0; j < u.size(); ++j) u[j] += freep[i][j];
        rep.traj.fields.push_back(to_field(u, g));
        rep.mismatch.push_back(half_hom(v[i], g, sk));
    }

    // power-law extrapolation of the integrand over the last quarter of the window
    std::vector<double> tt, nn;
    for (size_t i = 0; i < m; ++i)
        if (times[i] >= T_max - 0.25 * (T_max - T0) && integrand_norm[i] > 0.0) {
            tt.push_back(times[i]);
            nn.push_back(integrand_norm[i]);
        }
    if (tt.size() >= 3) {
        auto lf = loglog_fit(tt, nn);
        const double e = -lf.slope;
        rep.tail_estimate = e > 1.0 ? std::exp(lf.intercept) * std::pow(T_max, 1.0 - e) / (e - 1.0) : kInf;
    }
    return rep;
}

Trajectory duhamel_part(const Trajectory& tr) {
    tr.validate();
    if (tr.times.front() != 0.0) throw std::invalid_argument("duhamel_part: trajectory must start at t = 0");
    Trajectory out;
    out.params = tr.params;
    out.times = tr.times;
    const Field& u0 = tr.fields.front();
    for (size_t i = 0; i < tr.size(); ++i) out.fields.push_back(tr.fields[i] - free_evolve(u0, tr.times[i], tr.params.alpha));
    return out;
}

double pde_residual(const Trajectory& tr) {
    tr.validate();
    if (tr.size() < 3) throw std::invalid_argument("pde_residual: need at least 3 samples");
    const Grid& g = tr.grid();
    const EquationParams& p = tr.params;
    Integrator integ(g, p);
    double worst = 0.0;
    for (size_t i = 1; i + 1 < tr.size(); ++i) {
        const double t0 = tr.times[i - 1], t1 = tr.times[i], t2 = tr.times[i + 1];
        Half wm = half_of(tr.fields[i - 1]), w = half_of(tr.fields[i]), wp = half_of(tr.fields[i + 1]);
        rotate(wm, g, t0, p.alpha, -1.0);
        rotate(w, g, t1, p.alpha, -1.0);
        rotate(wp, g, t2, p.alpha, -1.0);
        // three-point derivative at the middle node for uneven spacing
        const double h0 = t1 - t0, h1 = t2 - t1;
        Half dw(w.size());
        for (size_t j = 0; j < dw.size(); ++j)
            dw[j] = -h1 / (h0 * (h0 + h1)) * wm[j] + (h1 - h0) / (h0 * h1) * w[j] + h0 / (h1 * (h0 + h1)) * wp[j];
        rotate(dw, g, t1, p.alpha, +1.0);
        Half u = half_of(tr.fields[i]);
        Half nl(u.size());
        integ.nonlinearity(u.data(), nl.data());
        for (size_t j = 0; j < dw.size(); ++j) dw[j] -= nl[j];
        worst = std::max(worst, half_l2(dw, g));
    }
    return worst;
}

}  // namespace dgbo
