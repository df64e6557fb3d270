#include "dgbo/xsb.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dgbo/fft.hpp"
#include "dgbo/init.hpp"
#include "dgbo/propagator.hpp"

namespace dgbo {

void SpaceTimeSample::validate() const {
    if (values.empty()) throw std::invalid_argument("empty space-time sample");
    if (!(dt > 0.0)) throw std::invalid_argument("space-time sample needs dt > 0");
    for (const auto& row : values)
        if (static_cast<int>(row.size()) != grid.n) throw std::invalid_argument("space-time sample row size mismatch");
}

double temporal_taper(double t, double t0, double window) {
    const double r = 2.0 * (t - t0) / window - 1.0;
    if (std::abs(r) >= 1.0) return 0.0;
    const double q = 1.0 - r * r;
    return q * q * q;
}

SpaceTimeSample sample_free_flow(const Field& f, double alpha, double t0, double window, int nt) {
    if (nt < 4) throw std::invalid_argument("need at least 4 time samples");
    SpaceTimeSample out;
    out.grid = f.grid();
    out.t0 = t0;
    out.dt = window / nt;
    out.values.reserve(nt);
    for (int i = 0; i < nt; ++i) out.values.push_back(free_evolve(f, t0 + i * out.dt, alpha).values());
    return out;
}

namespace {

// 2D transform of the tapered sample, stored [time mode][space mode]
std::vector<std::vector<cplx>> transform(const SpaceTimeSample& u) {
    const int nt = u.nt(), n = u.grid.n;
    std::vector<std::vector<cplx>> C(nt, std::vector<cplx>(n));
    for (int i = 0; i < nt; ++i) {
        const double w = temporal_taper(u.t0 + i * u.dt, u.t0, u.window());
        std::vector<cplx> row(n);
        for (int j = 0; j < n; ++j) row[j] = w * u.values[i][j];
        fft::forward(row.data(), C[i].data(), n);
    }
    std::vector<cplx> col(nt), out(nt);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < nt; ++i) col[i] = C[i][j];
        fft::forward(col.data(), out.data(), nt);
        for (int i = 0; i < nt; ++i) C[i][j] = out[i];
    }
    return C;
}

double weighted_sum(const std::vector<std::vector<cplx>>& C, const Grid& g, double dt, double window, double s,
                    double b, double alpha, bool with_derivative) {
    const int nt = static_cast<int>(C.size()), n = g.n;
    std::vector<double> xi(n), space_w(n);
    for (int j = 0; j < n; ++j) {
        xi[j] = g.wavenumber(j);
        space_w[j] = std::pow(1.0 + xi[j] * xi[j], s);
        if (with_derivative) space_w[j] *= g.is_nyquist(j) ? 0.0 : xi[j] * xi[j];
    }
    double acc = 0.0;
    for (int i = 0; i < nt; ++i) {
        const int l = i < nt / 2 ? i : i - nt;
        const double tau = 2.0 * std::numbers::pi * l / window;
        for (int j = 0; j < n; ++j) {
            const double mod = tau + dispersion(xi[j], alpha);
            acc += std::pow(1.0 + mod * mod, b) * space_w[j] * std::norm(C[i][j]);
        }
    }
    return acc * g.dx() * dt / (static_cast<double>(n) * nt);
}

}  // namespace

double xsb_norm(const SpaceTimeSample& u, double s, double b, double alpha) {
    u.validate();
    return std::sqrt(weighted_sum(transform(u), u.grid, u.dt, u.window(), s, b, alpha, false));
}

double taper_leakage(int nt) {
    if (nt < 16) throw std::invalid_argument("taper_leakage needs nt >= 16");
    std::vector<cplx> w(nt), c(nt);
    for (int i = 0; i < nt; ++i) w[i] = temporal_taper(i, 0.0, nt);
    fft::forward(w.data(), c.data(), nt);
    double total = 0.0, outside = 0.0;
    for (int i = 0; i < nt; ++i) {
        const int l = i < nt / 2 ? i : i - nt;
        total += std::norm(c[i]);
        if (std::abs(l) > 4) outside += std::norm(c[i]);
    }
    return outside / total;
}

double multilinear_ratio(const SpaceTimeSample& u1, const SpaceTimeSample& u2, const SpaceTimeSample& u3,
                         const SpaceTimeSample& u4, double s, double b, double alpha) {
    const SpaceTimeSample* us[4] = {&u1, &u2, &u3, &u4};
    for (auto* u : us) {
        u->validate();
        if (u->grid != u1.grid || u->nt() != u1.nt() || u->dt != u1.dt || u->t0 != u1.t0)
            throw std::invalid_argument("multilinear_ratio: samples must share grid and times");
    }
    double den = 1.0;
    for (auto* u : us) den *= xsb_norm(*u, s, b, alpha);
    if (!(den > 0.0)) return std::nan("");

    const int n = u1.grid.n, nf = 4 * n;
    SpaceTimeSample prod;
    prod.grid = Grid(nf, u1.grid.L);
    prod.t0 = u1.t0;
    prod.dt = u1.dt;
    prod.values.resize(u1.nt());
    for (int i = 0; i < u1.nt(); ++i) {
        std::vector<double> acc(nf, 1.0);
        for (auto* u : us) {
            const Field fine = Field::from_values(u1.grid, u->values[i]).resample(nf);
            for (int j = 0; j < nf; ++j) acc[j] *= fine.value(j);
        }
        prod.values[i] = std::move(acc);
    }
    const double num = std::sqrt(weighted_sum(transform(prod), prod.grid, prod.dt, prod.window(), s, b - 1.0, alpha, true));
    return num / den;
}

EnsembleReport multilinear_ensemble(double alpha, double s, double b, const EnsembleSpec& spec) {
    if (spec.members < 1) throw std::invalid_argument("ensemble needs members");
    const Grid g(spec.n, spec.L);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> carrier(0.5, 2.0), width(2.0, 4.0), phase(0.0, 2.0 * std::numbers::pi),
        center(0.35, 0.65);
    EnsembleReport rep;
    for (int m = 0; m < spec.members; ++m) {
        const double xi0 = carrier(rng), w = width(rng), ph = phase(rng), c = center(rng) * spec.L;
        const Field f = wave_packet(g, 1.0, w, xi0, ph, c);
        const SpaceTimeSample u = sample_free_flow(f, alpha, 0.0, spec.window, spec.nt);
        const double r = multilinear_ratio(u, u, u, u, s, b, alpha);
        if (!std::isfinite(r)) {
            ++rep.skipped;
            continue;
        }
        rep.ratios.push_back(r);
        rep.max_ratio = std::max(rep.max_ratio, r);
    }
    return rep;
}

}  // namespace dgbo
