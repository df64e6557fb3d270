#include "dgbo/frm.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dgbo/fit.hpp"

namespace dgbo::frm {
namespace {

struct Iv {
    double a, b;
};

double Lsym(double x, double alpha) { return x * std::pow(std::abs(x), alpha); }
double bracket(double x) { return std::sqrt(1.0 + x * x); }

std::vector<Iv> intersect(const std::vector<Iv>& A, const std::vector<Iv>& B) {
    std::vector<Iv> out;
    for (const auto& a : A)
        for (const auto& b : B) {
            const double lo = std::max(a.a, b.a), hi = std::min(a.b, b.b);
            if (hi > lo) out.push_back({lo, hi});
        }
    return out;
}

std::vector<Iv> remove_open(const std::vector<Iv>& A, double p, double q) {
    std::vector<Iv> out;
    for (const auto& a : A) {
        if (q <= a.a || p >= a.b) {
            out.push_back(a);
            continue;
        }
        if (p > a.a) out.push_back({a.a, p});
        if (q < a.b) out.push_back({q, a.b});
    }
    return out;
}

std::vector<Iv> split_at(const std::vector<Iv>& A, double x) {
    std::vector<Iv> out;
    for (const auto& a : A) {
        if (x > a.a && x < a.b) {
            out.push_back({a.a, x});
            out.push_back({x, a.b});
        } else {
            out.push_back(a);
        }
    }
    return out;
}

double solve_level(const std::function<double(double)>& f, double a, double b, double level) {
    auto g = [&](double x) { return f(x) - level; };
    double ga = g(a), gb = g(b);
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    if ((ga > 0.0) == (gb > 0.0)) return std::abs(ga) < std::abs(gb) ? a : b;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, a, b, ga, gb, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

// Integral of weight over {x in pieces : |Phi(x) - beta| < M}; Phi is monotone on each piece.
double band_integral(const std::vector<Iv>& pieces, const std::function<double(double)>& Phi,
                     const std::function<double(double)>* weight, double const_weight, double beta, double M) {
    const double lo = beta - M, hi = beta + M;
    double total = 0.0;
    for (const auto& iv : pieces) {
        const double fa = Phi(iv.a), fb = Phi(iv.b);
        double x1, x2;
        if (fa == fb) {
            if (std::abs(fa - beta) >= M) continue;
            x1 = iv.a;
            x2 = iv.b;
        } else if (fb > fa) {
            if (fb <= lo || fa >= hi) continue;
            x1 = fa >= lo ? iv.a : solve_level(Phi, iv.a, iv.b, lo);
            x2 = fb <= hi ? iv.b : solve_level(Phi, iv.a, iv.b, hi);
        } else {
            if (fa <= lo || fb >= hi) continue;
            x1 = fa <= hi ? iv.a : solve_level(Phi, iv.a, iv.b, hi);
            x2 = fb >= lo ? iv.b : solve_level(Phi, iv.a, iv.b, lo);
        }
        if (!(x2 > x1)) continue;
        if (weight)
            total += boost::math::quadrature::gauss<double, 20>::integrate(*weight, x1, x2);
        else
            total += const_weight * (x2 - x1);
    }
    return total;
}

double outer_integral(const std::function<double(double)>& f, const std::vector<Iv>& domain, const QuadratureOptions& opt) {
    double total = 0.0;
    for (const auto& iv : domain) {
        if (!(iv.b > iv.a)) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, iv.a, iv.b, opt.max_depth, opt.rel_tol);
    }
    return total;
}

std::vector<Iv> symmetric_shell(double inner, double outer) {
    inner = std::abs(inner);
    outer = std::abs(outer);
    if (!(outer > inner)) return {};
    return {{-outer, -inner}, {inner, outer}};
}

// pieces of the xi1 domain for I1 at fixed xi, xi2, xi3
std::vector<Iv> i1_pieces(double xi, double xi2, double xi3) {
    const double c = xi - xi2 - xi3;
    auto A = symmetric_shell(xi2, xi);
    auto B = std::vector<Iv>{{c - std::abs(xi3), c + std::abs(xi3)}};
    return split_at(intersect(A, B), 0.5 * c);
}

std::vector<Iv> j2_pieces(double xi, double xi2, double xi4) {
    const double c = xi - xi2 - xi4;
    auto A = symmetric_shell(xi2, xi);
    std::vector<Iv> B;
    const double a4 = std::abs(xi4), a2 = std::abs(xi2);
    if (a2 > a4) {
        B.push_back({c - a2, c - a4});
        B.push_back({c + a4, c + a2});
    }
    return split_at(intersect(A, B), 0.5 * c);
}

std::vector<Iv> j1_pieces(double xi1, double xi2, double xi3) {
    const double c = xi1 + xi2 + xi3;
    const double a3 = std::abs(xi3);
    if (!(a3 > 0.0)) return {};
    std::vector<Iv> A{{-a3, a3}};
    A = remove_open(A, -c - std::abs(xi1), -c + std::abs(xi1));
    return split_at(A, -0.5 * c);
}

}  // namespace

double phase(double xi1, double xi2, double xi3, double xi4, double alpha) {
    const double xi = xi1 + xi2 + xi3 + xi4;
    return Lsym(xi, alpha) - Lsym(xi1, alpha) - Lsym(xi2, alpha) - Lsym(xi3, alpha) - Lsym(xi4, alpha);
}

double I1_integral(double xi, double xi3, double beta, double s, double M, double alpha, const QuadratureOptions& opt) {
    if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
    if (std::abs(xi3) > std::abs(xi)) return 0.0;
    auto outer = [&](double xi2) {
        const double c = xi - xi2 - xi3;
        auto pieces = i1_pieces(xi, xi2, xi3);
        if (pieces.empty()) return 0.0;
        auto Phi = [&](double x1) {
            return Lsym(xi, alpha) - Lsym(x1, alpha) - Lsym(xi2, alpha) - Lsym(xi3, alpha) - Lsym(c - x1, alpha);
        };
        const double fixed = std::abs(xi) * std::pow(bracket(xi), s + 0.5) /
                             (std::pow(bracket(xi2), s + 0.5) * std::pow(bracket(xi3), s));
        std::function<double(double)> w = [&](double x1) {
            return fixed / (std::pow(bracket(x1), s + 0.5) * std::pow(bracket(c - x1), s));
        };
        return band_integral(pieces, Phi, &w, 0.0, beta, M);
    };
    return outer_integral(outer, symmetric_shell(xi3, xi), opt);
}

double J1_integral(double xi1, double xi2, double xi3, double beta, double s, double M, double alpha) {
    if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
    if (!(std::abs(xi1) >= std::abs(xi2) && std::abs(xi2) >= std::abs(xi3))) return 0.0;
    const double c = xi1 + xi2 + xi3;
    auto pieces = j1_pieces(xi1, xi2, xi3);
    auto Phi = [&](double x4) {
        return Lsym(c + x4, alpha) - Lsym(xi1, alpha) - Lsym(xi2, alpha) - Lsym(xi3, alpha) - Lsym(x4, alpha);
    };
    const double w = std::pow(std::abs(xi3), 1.5 - 3.0 * s);
    return band_integral(pieces, Phi, nullptr, w, beta, M);
}

double J2_integral(double xi, double xi4, double beta, double s, double M, double alpha, const QuadratureOptions& opt) {
    if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
    if (std::abs(xi4) > std::abs(xi)) return 0.0;
    const double w = std::pow(std::abs(xi), 0.5 - 3.0 * s);
    auto outer = [&](double xi2) {
        const double c = xi - xi2 - xi4;
        auto pieces = j2_pieces(xi, xi2, xi4);
        if (pieces.empty()) return 0.0;
        auto Phi = [&](double x1) {
            return Lsym(xi, alpha) - Lsym(x1, alpha) - Lsym(xi2, alpha) - Lsym(c - x1, alpha) - Lsym(xi4, alpha);
        };
        return band_integral(pieces, Phi, nullptr, w, beta, M);
    };
    return outer_integral(outer, symmetric_shell(xi4, xi), opt);
}

namespace {

std::pair<double, double> range_2d(const std::function<std::vector<Iv>(double)>& pieces_of,
                                   const std::function<double(double, double)>& Phi, const std::vector<Iv>& outer) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const int no = 200, ni = 50;
    for (const auto& iv : outer)
        for (int i = 0; i <= no; ++i) {
            const double y = iv.a + (iv.b - iv.a) * i / no;
            for (const auto& p : pieces_of(y))
                for (int j = 0; j <= ni; ++j) {
                    const double x = p.a + (p.b - p.a) * j / ni;
                    const double v = Phi(y, x);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
        }
    if (lo > hi) return {0.0, 0.0};
    return {lo, hi};
}

}  // namespace

std::pair<double, double> phi_range_I1(double xi, double xi3, double alpha) {
    return range_2d([&](double xi2) { return i1_pieces(xi, xi2, xi3); },
                    [&](double xi2, double x1) { return phase(x1, xi2, xi3, xi - x1 - xi2 - xi3, alpha); },
                    symmetric_shell(xi3, xi));
}

std::pair<double, double> phi_range_J2(double xi, double xi4, double alpha) {
    return range_2d([&](double xi2) { return j2_pieces(xi, xi2, xi4); },
                    [&](double xi2, double x1) { return phase(x1, xi2, xi - x1 - xi2 - xi4, xi4, alpha); },
                    symmetric_shell(xi4, xi));
}

std::pair<double, double> phi_range_J1(double xi1, double xi2, double xi3, double alpha) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : j1_pieces(xi1, xi2, xi3))
        for (int j = 0; j <= 400; ++j) {
            const double x4 = p.a + (p.b - p.a) * j / 400;
            const double v = phase(xi1, xi2, xi3, x4, alpha);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (lo > hi) return {0.0, 0.0};
    return {lo, hi};
}

CsResult cs_integral(double xi, double s, const std::vector<double>& Ms, double alpha, double h) {
    if (std::abs(xi) > 1.0) throw std::invalid_argument("cs_integral is posed for |xi| <= 1");
    if (!(h > 0.0)) throw std::invalid_argument("cell size must be positive");
    CsResult res;
    res.values.assign(Ms.size(), 0.0);
    const double a = std::abs(xi);
    if (a == 0.0) return res;
    const int nc = static_cast<int>(std::ceil(2.0 * a / h));
    const double hc = 2.0 * a / nc;
    const double vol = hc * hc * hc;
    const double top = xi * xi * std::pow(bracket(xi), 2.0 * s);
    std::vector<double> grad;
    for (int i = 0; i < nc; ++i) {
        const double x1 = -a + (i + 0.5) * hc;
        for (int j = 0; j < nc; ++j) {
            const double x2 = -a + (j + 0.5) * hc;
            if (std::abs(x2) > std::abs(x1)) continue;
            for (int l = 0; l < nc; ++l) {
                const double x3 = -a + (l + 0.5) * hc;
                if (std::abs(x3) > std::abs(x2)) continue;
                const double x4 = xi - x1 - x2 - x3;
                if (std::abs(x4) > std::abs(x3)) continue;
                const double w = top / std::pow(bracket(x1) * bracket(x2) * bracket(x3) * bracket(x4), 2.0 * s);
                const double ph = std::abs(phase(x1, x2, x3, x4, alpha));
                res.unrestricted += w * vol;
                for (size_t m = 0; m < Ms.size(); ++m)
                    if (ph < Ms[m]) res.values[m] += w * vol;
                if (grad.size() < 4096 && (i + j + l) % 7 == 0) {
                    // |dPhi/dxi1| with xi4 eliminated
                    grad.push_back((alpha + 1.0) * std::abs(std::pow(std::abs(x4), alpha) - std::pow(std::abs(x1), alpha)));
                }
            }
        }
    }
    if (!grad.empty() && !Ms.empty()) {
        std::nth_element(grad.begin(), grad.begin() + grad.size() / 2, grad.end());
        const double g = grad[grad.size() / 2];
        const double band = g > 0.0 ? 2.0 * *std::min_element(Ms.begin(), Ms.end()) / g
                                  : std::numeric_limits<double>::infinity();
        res.resolution_warning = band < 4.0 * hc;
    }
    return res;
}

double level_band_area(double M, double beta, double N, int sign) {
    if (!(M > 0.0) || !(N > 0.0)) throw std::invalid_argument("level_band_area: M and N must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("level_band_area: sign must be +1 or -1");
    const double sg = sign;
    auto clipped_root = [N](double v) { return v <= 0.0 ? 0.0 : std::min(std::sqrt(v), N); };
    auto len = [&](double q) {
        const double base = beta - sg * q * q;
        return 2.0 * (clipped_root(base + M) - clipped_root(base - M));
    };
    // breakpoints where the p-interval endpoints touch 0 or N
    std::vector<double> bp{0.0, N};
    for (double lvl : {beta - M, beta + M})
        for (double v : {0.0, N * N}) {
            const double q2 = (lvl - v) / sg;
            if (q2 > 0.0 && std::sqrt(q2) < N) bp.push_back(std::sqrt(q2));
        }
    std::sort(bp.begin(), bp.end());
    boost::math::quadrature::tanh_sinh<double> ts;
    double total = 0.0;
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        if (!(bp[i + 1] > bp[i])) continue;
        total += ts.integrate(len, bp[i], bp[i + 1]);
    }
    return 2.0 * total;
}

MFit fit_M_exponent(const std::vector<std::vector<double>>& values, const std::vector<double>& M_grid) {
    if (M_grid.size() < 5) throw std::invalid_argument("M grid needs at least 5 points");
    for (size_t i = 0; i < M_grid.size(); ++i) {
        if (!(M_grid[i] > 0.0)) throw std::invalid_argument("M grid must be positive");
        if (i >= 2) {
            const double r0 = M_grid[i - 1] / M_grid[i - 2], r1 = M_grid[i] / M_grid[i - 1];
            if (std::abs(r1 - r0) > 1e-9 * r0 || !(r0 > 1.0)) throw std::invalid_argument("M grid must be geometric and increasing");
        }
    }
    MFit out;
    out.M_grid = M_grid;
    out.sup_values.assign(M_grid.size(), 0.0);
    for (const auto& row : values) {
        if (row.size() != M_grid.size()) throw std::invalid_argument("sample row does not match M grid");
        for (size_t m = 0; m < row.size(); ++m) out.sup_values[m] = std::max(out.sup_values[m], row[m]);
    }
    for (double v : out.sup_values)
        if (!(v > 0.0)) throw std::invalid_argument("sup over samples vanishes at some M; widen the sampling design");
    out.slope = loglog_fit(M_grid, out.sup_values).slope;
    bool flat = true;
    for (size_t m = 1; m < M_grid.size(); ++m) {
        const double local = std::log(out.sup_values[m] / out.sup_values[m - 1]) / std::log(M_grid[m] / M_grid[m - 1]);
        if (std::abs(local) > 0.05) flat = false;
    }
    out.saturated = flat;
    return out;
}

MFit fit_M_exponent(const std::function<double(size_t, double)>& family, const std::vector<double>& M_grid,
                    size_t n_samples) {
    std::vector<std::vector<double>> values(n_samples, std::vector<double>(M_grid.size()));
    for (size_t i = 0; i < n_samples; ++i)
        for (size_t m = 0; m < M_grid.size(); ++m) values[i][m] = family(i, M_grid[m]);
    return fit_M_exponent(values, M_grid);
}

std::vector<double> default_M_grid() {
    std::vector<double> g;
    for (int e = 0; e <= 6; ++e) g.push_back(std::ldexp(1.0, e));
    return g;
}

std::vector<double> default_frequencies() { return {2.0, 4.0, 8.0, 16.0, 32.0}; }

namespace {

std::vector<double> beta_grid(std::pair<double, double> r) {
    std::vector<double> b(9);
    for (int i = 0; i < 9; ++i) b[i] = r.first + (r.second - r.first) * i / 8.0;
    return b;
}

SweepReport finish(const std::string& name, double alpha, double s, const std::vector<double>& M_grid,
                   const std::vector<std::vector<double>>& values) {
    MFit f = fit_M_exponent(values, M_grid);
    SweepReport r;
    r.integral = name;
    r.alpha = alpha;
    r.s = s;
    r.M_grid = M_grid;
    r.sup_values = f.sup_values;
    r.fitted_slope = f.slope;
    r.saturated = f.saturated;
    r.pass = f.slope <= 1.1;
    r.samples = values.size();
    return r;
}

}  // namespace

SweepReport sweep_I1(double alpha, double s, const std::vector<double>& M_grid) {
    std::vector<std::vector<double>> values;
    for (double xi : default_frequencies())
        for (double r3 : {-0.5, -0.25, -0.125, 0.125, 0.25, 0.5}) {
            const double xi3 = r3 * xi;
            for (double beta : beta_grid(phi_range_I1(xi, xi3, alpha))) {
                std::vector<double> row;
                for (double M : M_grid) row.push_back(I1_integral(xi, xi3, beta, s, M, alpha));
                values.push_back(std::move(row));
            }
        }
    return finish("I1", alpha, s, M_grid, values);
}

SweepReport sweep_J1(double alpha, double s, const std::vector<double>& M_grid) {
    std::vector<std::vector<double>> values;
    const double ratios[][2] = {{0.9, 0.8}, {0.9, -0.8}, {-0.9, 0.8}, {-0.9, -0.8},
                                {1.0, -1.0}, {1.0, 1.0}, {0.6, 0.4}, {0.6, -0.4}};
    for (double xi1 : default_frequencies())
        for (const auto& r : ratios) {
            const double xi2 = r[0] * xi1, xi3 = r[1] * xi1;
            for (double beta : beta_grid(phi_range_J1(xi1, xi2, xi3, alpha))) {
                std::vector<double> row;
                for (double M : M_grid) row.push_back(J1_integral(xi1, xi2, xi3, beta, s, M, alpha));
                values.push_back(std::move(row));
            }
        }
    return finish("J1", alpha, s, M_grid, values);
}

SweepReport sweep_J2(double alpha, double s, const std::vector<double>& M_grid) {
    std::vector<std::vector<double>> values;
    for (double xi : default_frequencies())
        for (double r4 : {-0.25, -0.125, 0.0, 0.125, 0.25}) {
            const double xi4 = r4 * xi;
            for (double beta : beta_grid(phi_range_J2(xi, xi4, alpha))) {
                std::vector<double> row;
                for (double M : M_grid) row.push_back(J2_integral(xi, xi4, beta, s, M, alpha));
                values.push_back(std::move(row));
            }
        }
    return finish("J2", alpha, s, M_grid, values);
}

SweepReport sweep_cs(double alpha, double s, const std::vector<double>& M_grid) {
    std::vector<std::vector<double>> values;
    for (double xi : {0.25, 0.5, 0.75, 1.0}) values.push_back(cs_integral(xi, s, M_grid, alpha).values);
    return finish("cs", alpha, s, M_grid, values);
}

SweepReport sweep_level_band(double N) {
    std::vector<double> M_grid;
    for (int i = 0; i < 5; ++i) M_grid.push_back(1e-3 * std::pow(10.0, 0.5 * i));
    std::vector<std::vector<double>> values;
    for (double beta : {0.0, 0.5 * N * N, -0.5 * N * N})
        for (int sign : {-1, 1}) {
            std::vector<double> row;
            for (double M : M_grid) row.push_back(level_band_area(M, beta, N, sign));
            values.push_back(std::move(row));
        }
    return finish("level_band", 0.0, 0.0, M_grid, values);
}

}  // namespace dgbo::frm
