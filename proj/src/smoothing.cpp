#include "dgbo/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgbo/fit.hpp"

namespace dgbo {

double smoothing_eps_pred(double s, double alpha) {
    return std::min({3.0 * s + alpha - 1.5, s + 0.5, alpha - 1.0});
}

namespace {

double mean_power(const Field& u, int k) {
    double acc = 0.0;
    for (double v : u.values()) acc += std::pow(v, k);
    return acc / u.size();
}

struct Shells {
    std::vector<double> centers, duh, lin;
};

Shells shell_means(const std::vector<cplx>& w, const std::vector<cplx>& lin, const Grid& g, double lo, double hi,
                   int count) {
    Shells out;
    const double r = std::pow(hi / lo, 1.0 / count);
    for (int i = 0; i < count; ++i) {
        const double a = lo * std::pow(r, i), b = a * r;
        double sw = 0.0, sl = 0.0;
        int c = 0;
        for (int j = 1; j < g.n / 2; ++j) {
            const double xi = g.wavenumber(j);
            if (xi < a || xi >= b) continue;
            sw += std::norm(w[j]);
            sl += std::norm(lin[j]);
            ++c;
        }
        if (c == 0) continue;
        out.centers.push_back(std::sqrt(a * b));
        out.duh.push_back(sw / c);
        out.lin.push_back(sl / c);
    }
    return out;
}

}  // namespace

SmoothingReport smoothing_gain(const Trajectory& tr, double s, const SmoothingOptions& opt) {
    tr.validate();
    const auto& p = tr.params;
    if (p.k != 3) throw std::invalid_argument("smoothing_gain is posed for k = 3");
    if (!(s > critical_index(p.alpha, 3))) throw std::invalid_argument("smoothing_gain needs s above the critical index");
    if (tr.size() < 3) throw std::invalid_argument("smoothing_gain needs at least 3 snapshots");

    SmoothingReport rep;
    rep.eps_pred = smoothing_eps_pred(s, p.alpha);
    const Grid& g = tr.grid();
    const Field& u0 = tr.fields.front();

    double xi_hi = opt.xi_hi;
    if (xi_hi <= 0.0) {
        double cmax = 0.0;
        for (const auto& c : u0.coeffs()) cmax = std::max(cmax, std::abs(c));
        int top = 0;
        for (int j = 1; j < g.n / 2; ++j)
            if (std::abs(u0.coeff(j)) > 1e-12 * cmax) top = j;
        xi_hi = 0.5 * g.wavenumber(top);
    }
    if (!(xi_hi > opt.xi_lo)) throw std::invalid_argument("smoothing_gain: empty fit window");

    // running gauge shift by trapezoid over the snapshots
    std::vector<double> shift(tr.size(), 0.0);
    double prev = mean_power(u0, p.k);
    for (size_t i = 1; i < tr.size(); ++i) {
        const double cur = mean_power(tr.fields[i], p.k);
        shift[i] = shift[i - 1] + p.mu * 0.5 * (prev + cur) * (tr.times[i] - tr.times[i - 1]);
        prev = cur;
    }

    const double T = tr.times.back();
    double sum_lin = 0.0, sum_duh = 0.0;
    Shells last;
    for (size_t i = 1; i < tr.size(); ++i) {
        const double t = tr.times[i];
        if (t < opt.late_fraction * T) continue;
        const Field lin = free_evolve(u0, t, p.alpha);
        std::vector<cplx> w(g.n);
        for (int j = 0; j < g.n; ++j) {
            cplx c = tr.fields[i].coeff(j);
            if (opt.gauge) c *= std::polar(1.0, g.wavenumber(j) * shift[i]);
            w[j] = c - lin.coeff(j);
        }
        Shells sh = shell_means(w, lin.coeffs(), g, opt.xi_lo, xi_hi, opt.shells);
        if (sh.centers.size() < 3) throw std::invalid_argument("smoothing_gain: fewer than 3 populated shells");
        bool positive = true;
        for (double v : sh.duh) positive = positive && v > 0.0;
        if (!positive) {
            rep.unresolved = true;
            rep.note = "Duhamel part vanishes on a shell";
            continue;
        }
        const double sl = 0.5 * loglog_fit(sh.centers, sh.lin).slope;
        const double sd = 0.5 * loglog_fit(sh.centers, sh.duh).slope;
        rep.times.push_back(t);
        rep.eps_per_time.push_back(sl - sd);
        sum_lin += sl;
        sum_duh += sd;
        last = std::move(sh);
        rep.gauge_shift = shift[i];
    }
    if (rep.times.empty()) throw std::invalid_argument("smoothing_gain: no usable late snapshots");
    const double m = static_cast<double>(rep.times.size());
    rep.linear_slope = sum_lin / m;
    rep.duhamel_slope = sum_duh / m;
    rep.eps_hat = rep.linear_slope - rep.duhamel_slope;
    rep.shell_centers = last.centers;
    rep.duhamel_shells = last.duh;
    rep.linear_shells = last.lin;
    // the top shell sitting at round-off level means the decay is not in its asymptotic regime
    if (!last.duh.empty() && last.duh.back() < 1e-28 * std::max(1.0, last.lin.back())) {
        rep.unresolved = true;
        rep.note = "Duhamel spectrum reaches round-off inside the fit window";
    }
    return rep;
}

}  // namespace dgbo
