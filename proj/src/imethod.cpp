#include "dgbo/imethod.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <stdexcept>

#include "dgbo/fit.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo {

AlmostConservationReport almost_conservation_experiment(const Field& u0, const EquationParams& p, double s,
                                                        const SolverConfig& cfg, const std::vector<double>& N_list) {
    p.validate();
    if (p.k != 3) throw std::invalid_argument("almost conservation experiment is posed for k = 3");
    if (!(p.alpha > 1.5 && p.alpha <= 2.0)) throw std::invalid_argument("almost conservation needs alpha in (3/2, 2]");
    if (!(s < 0.0)) throw std::invalid_argument("almost conservation needs s < 0");
    if (N_list.size() < 2) throw std::invalid_argument("N_list needs at least 2 entries");
    const Grid& g = u0.grid();
    const int degree = cfg.dealias_degree > 0 ? cfg.dealias_degree : p.k + 1;
    const double xi_cut = g.wavenumber(dealias_cutoff(g.n, degree));
    for (size_t i = 0; i < N_list.size(); ++i) {
        if (!(N_list[i] > 1.0) || N_list[i] >= xi_cut)
            throw std::invalid_argument("N must lie in (1, dealias cutoff wavenumber)");
        if (i >= 2) {
            const double r0 = N_list[i - 1] / N_list[i - 2], r1 = N_list[i] / N_list[i - 1];
            if (std::abs(r1 - r0) > 1e-9 * r0 || !(r0 > 1.0)) throw std::invalid_argument("N_list must be geometric");
        }
    }

    AlmostConservationReport rep;
    rep.N_list = N_list;
    rep.T = cfg.t_end;
    rep.predicted_slope = -(p.alpha - 1.5);
    RunResult res = run(u0, p, cfg);
    const Field& uT = res.final_state.field;
    rep.steps = res.final_state.steps;
    const double m0 = mass(u0);
    rep.mass_drift = m0 > 0.0 ? std::abs(mass(uT) - m0) / m0 : 0.0;

    std::vector<double> xs, ys;
    for (double N : N_list) {
        const IMultiplier m = make_I_multiplier(g, N, s);
        const double e0 = I_energy(u0, m);
        const double inc = std::abs(I_energy(uT, m) - e0);
        rep.I_norms0.push_back(e0);
        rep.increments.push_back(inc);
        const bool low = inc < kIncrementNoiseFloor;
        rep.excluded.push_back(low);
        if (!low) {
            xs.push_back(N);
            ys.push_back(inc);
        }
    }
    if (xs.size() < 2) throw std::runtime_error("fewer than 2 increments above the noise floor");
    rep.fitted_slope = loglog_fit(xs, ys).slope;
    return rep;
}

namespace {

// |I_N u0^lambda|^2 on the line, with u0^lambda^(xi) = lambda^{1 - alpha/3} u0^(lambda xi)
double I_norm_sq(double lambda, double N, double s, double alpha, double delta) {
    const double pref = std::pow(lambda, 2.0 - 2.0 * alpha / 3.0);
    auto prof = [&](double xi) { return std::pow(1.0 + lambda * lambda * xi * xi, -(s + 0.5 + delta)); };
    const double low = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(prof, 0.0, N, 15, 1e-10);
    boost::math::quadrature::exp_sinh<double> es;
    auto tail = [&](double y) {
        const double xi = N + y;
        return std::pow(xi / N, 2.0 * s) * prof(xi);
    };
    const double high = es.integrate(tail, 0.0, std::numeric_limits<double>::infinity());
    return 2.0 * pref * (low + high);
}

}  // namespace

LambdaCheck lambda_scaling_check(double s, double alpha, const std::vector<double>& N_list, double delta) {
    if (!(s < 0.0)) throw std::invalid_argument("lambda check needs s < 0");
    if (!(s > critical_index(alpha, 3))) throw std::invalid_argument("lambda check needs s above the critical index");
    if (N_list.size() < 2) throw std::invalid_argument("lambda check needs at least 2 values of N");
    LambdaCheck out;
    out.N_list = N_list;
    out.formula_exponent = imethod_lambda_exponent(s, alpha);
    const double target = std::log(I_norm_sq(1.0, N_list.front(), s, alpha, delta));
    for (double N : N_list) {
        // the norm decreases in lambda since s > s_3
        auto f = [&](double ll) { return std::log(I_norm_sq(std::exp(ll), N, s, alpha, delta)) - target; };
        double lo = -1.0, hi = 1.0;
        while (f(hi) > 0.0) hi *= 2.0;
        while (f(lo) < 0.0) lo *= 2.0;
        std::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(40), it);
        out.lambdas.push_back(std::exp(0.5 * (r.first + r.second)));
    }
    out.fitted_exponent = loglog_fit(N_list, out.lambdas).slope;
    return out;
}

}  // namespace dgbo
