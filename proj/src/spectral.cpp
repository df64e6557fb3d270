#include "dgbo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgbo {

Field apply_multiplier(const Field& f, const std::function<cplx(double, int)>& symbol) {
    const Grid& g = f.grid();
    std::vector<cplx> c(f.coeffs());
    for (int j = 0; j < g.n; ++j) c[j] *= symbol(g.wavenumber(j), j);
    return Field::from_coeffs(g, std::move(c));
}

Field fractional_derivative(const Field& f, double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("derivative order must be finite");
    if (a < 0.0) throw std::invalid_argument("negative derivative order (inverse Riesz potential) is not supported");
    return apply_multiplier(f, [a](double xi, int) {
        if (xi == 0.0) return cplx(a == 0.0 ? 1.0 : 0.0);
        return cplx(std::pow(std::abs(xi), a));
    });
}

Field hilbert(const Field& f) {
    const Grid& g = f.grid();
    return apply_multiplier(f, [&g](double xi, int j) {
        if (g.is_nyquist(j) || xi == 0.0) return cplx(0.0);
        return cplx(0.0, xi > 0.0 ? -1.0 : 1.0);
    });
}

Field derivative(const Field& f) {
    const Grid& g = f.grid();
    return apply_multiplier(f, [&g](double xi, int j) {
        if (g.is_nyquist(j)) return cplx(0.0);
        return cplx(0.0, xi);
    });
}

Field bessel_potential(const Field& f, double s) {
    return apply_multiplier(f, [s](double xi, int) { return cplx(std::pow(1.0 + xi * xi, 0.5 * s)); });
}

double check_symbol_identity(const Field& f, double a) {
    if (a != 1.0 && a != 2.0) throw std::invalid_argument("symbol identity check needs a in {1, 2}");
    Field direct = fractional_derivative(f, a);
    Field composed = f;
    for (int i = 0; i < static_cast<int>(a); ++i) composed = hilbert(derivative(composed));
    double m = 0.0;
    for (int j = 0; j < f.size(); ++j) m = std::max(m, std::abs(direct.value(j) - composed.value(j)));
    return m;
}

namespace {

double weighted_sum(const Field& f, double s, bool homogeneous) {
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double xi = g.wavenumber(j);
        double w;
        if (homogeneous) {
            if (xi == 0.0) continue;
            w = std::pow(std::abs(xi), 2.0 * s);
        } else {
            w = std::pow(1.0 + xi * xi, s);
        }
        acc += w * std::norm(f.coeff(j));
    }
    const double n = g.n;
    return g.L * acc / (n * n);
}

}  // namespace

double sobolev_norm(const Field& f, const SobolevIndex& idx) {
    if (idx.homogeneous && idx.s < 0.0) {
        const double scale = std::max(1.0, l2_norm(f));
        if (std::abs(f.coeff(0)) * std::sqrt(f.grid().L) / f.size() > 1e-12 * scale)
            throw std::domain_error("homogeneous norm of negative order needs a mean-zero field");
    }
    return std::sqrt(weighted_sum(f, idx.s, idx.homogeneous));
}

double sobolev_norm(const Field& f, double s, bool homogeneous) { return sobolev_norm(f, SobolevIndex{s, homogeneous}); }

double homogeneous_norm_off_mean(const Field& f, double s) { return std::sqrt(weighted_sum(f, s, true)); }

int dealias_cutoff(int n, int degree) {
    if (degree < 2) throw std::invalid_argument("dealias degree must be at least 2");
    if (degree > n) throw std::invalid_argument("dealias degree exceeds grid size");
    // largest m with m * (degree + 1) < n
    return (n - 1) / (degree + 1);
}

Field dealias(const Field& f, int degree) {
    const Grid& g = f.grid();
    const int K = dealias_cutoff(g.n, degree);
    std::vector<cplx> c(f.coeffs());
    for (int j = 0; j < g.n; ++j)
        if (std::abs(g.mode(j)) > K) c[j] = 0.0;
    return Field::from_coeffs(g, std::move(c));
}

Field exact_product(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("grid mismatch");
    const int n = a.size();
    const int nf = 2 * n;
    Field af = a.resample(nf), bf = b.resample(nf);
    std::vector<double> v(nf);
    for (int j = 0; j < nf; ++j) v[j] = af.value(j) * bf.value(j);
    return Field::from_values(Grid(nf, a.grid().L), std::move(v));
}

}  // namespace dgbo
