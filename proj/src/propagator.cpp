#include "dgbo/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "dgbo/fit.hpp"

namespace dgbo {

void EquationParams::validate() const {
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in [1, 2]");
    if (k < 1) throw std::invalid_argument("k must be a positive integer");
    if (mu != 1.0 && mu != -1.0) throw std::invalid_argument("mu must be +1 or -1");
}

double dispersion(double xi, double alpha) { return xi * std::pow(std::abs(xi), alpha); }

Field free_evolve(const Field& f, double t, double alpha) {
    if (t == 0.0) return f;
    const Grid& g = f.grid();
    std::vector<cplx> c(f.coeffs());
    for (int j = 0; j < g.n; ++j) {
        if (g.is_nyquist(j)) continue;
        const double ph = -t * dispersion(g.wavenumber(j), alpha);
        c[j] *= cplx(std::cos(ph), std::sin(ph));
    }
    return Field::from_coeffs(g, std::move(c));
}

DecayFit dispersive_decay_fit(const Field& f, double alpha, const std::vector<double>& tgrid) {
    DecayFit out;
    for (size_t i = 1; i < tgrid.size(); ++i)
        if (!(tgrid[i] > tgrid[i - 1])) throw std::invalid_argument("time grid must be increasing");
    for (double t : tgrid) {
        if (t < 1.0) continue;
        out.times.push_back(t);
        out.sup_norms.push_back(free_evolve(f, t, alpha).max_abs());
    }
    if (out.times.size() < 3) throw std::invalid_argument("decay fit needs at least 3 samples with t >= 1");
    for (double v : out.sup_norms)
        if (!(v > 0.0)) throw std::invalid_argument("degenerate decay fit: zero sup norm");
    auto lf = loglog_fit(out.times, out.sup_norms);
    out.slope = lf.slope;
    out.intercept = lf.intercept;
    return out;
}

StrichartzTriple strichartz_gamma(double p, double q, double alpha) {
    if (!(p >= 4.0)) throw std::invalid_argument("strichartz: p must be >= 4");
    if (!(q >= 2.0)) throw std::invalid_argument("strichartz: q must be >= 2");
    if (std::isinf(p) && std::isinf(q)) throw std::invalid_argument("strichartz: (p, q) = (inf, inf) excluded");
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
    if (2.0 * ip + iq > 0.5 + 1e-15) throw std::invalid_argument("strichartz: 2/p + 1/q <= 1/2 violated");
    return {p, q, ip + (alpha + 1.0) * iq - 0.5};
}

double critical_index(double alpha, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return 0.5 - alpha / k;
}

double subcritical_range_end(double alpha, int k) {
    return critical_index(alpha, k) + 2.0 * (alpha * alpha - 1.0) / ((2.0 * alpha + 1.0) * k);
}

std::pair<double, double> scattering_exponents(double s, double alpha, int k) {
    if (!(alpha > 1.0)) throw std::invalid_argument("scattering exponents need alpha > 1");
    const double sk = critical_index(alpha, k);
    const double den = 2.0 * (alpha * alpha - 1.0) - (s - sk) * (2.0 * alpha + 1.0) * k;
    if (!(den > 1e-12)) throw std::invalid_argument("s is above the subcritical LWP range");
    const double p = (2.0 * alpha + 1.0) * k / (alpha + 2.0);
    const double q = (2.0 * alpha + 1.0) * (alpha + 1.0) * k / den;
    if (q < 2.0) throw std::invalid_argument("scattering time exponent below 2");
    return {p, q};
}

ResolutionExponents resolution_exponents(double alpha) {
    if (!(alpha > 1.0)) throw std::invalid_argument("resolution exponents need alpha > 1");
    const double a = 4.0 * alpha + 2.0;
    return {a / (alpha - 1.0), a / 3.0, a / (3.0 * (alpha + 1.0)), a / (4.0 * alpha - 1.0)};
}

double gwp_threshold(double alpha) {
    const double d = 2.0 * alpha - 3.0;
    return -d * d / (24.0 * alpha - 6.0);
}

double gwp_growth_exponent(double s, double alpha) {
    if (!(alpha > 1.5 && alpha <= 2.0)) throw std::invalid_argument("growth exponent needs alpha in (3/2, 2]");
    if (!(s > gwp_threshold(alpha) && s <= 0.0)) throw std::invalid_argument("s outside the global well-posedness range");
    const double d = 2.0 * alpha - 3.0;
    const double den = d * d * (3.0 - 2.0 * alpha - 6.0 * s) - 12.0 * d * (alpha + 1.0) * s;
    return 2.0 * s / den;
}

double imethod_lambda_exponent(double s, double alpha) {
    const double den = 3.0 - 2.0 * alpha - 6.0 * s;
    if (den == 0.0) throw std::invalid_argument("lambda exponent undefined");
    return 6.0 * s / den;
}

}  // namespace dgbo
