#include "dgbo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dgbo/fft.hpp"

namespace dgbo {

Grid::Grid(int n_, double L_) : n(n_), L(L_) {
    if (n <= 0 || n % 2 != 0) throw std::invalid_argument("grid size must be a positive even integer");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid period must be positive");
}

double Grid::wavenumber(int j) const { return 2.0 * std::numbers::pi * mode(j) / L; }

std::vector<double> Grid::xs() const {
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = x(j);
    return out;
}

std::vector<double> Grid::ks() const {
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = wavenumber(j);
    return out;
}

Field Field::zeros(const Grid& g) {
    Field f;
    f.grid_ = g;
    f.values_.assign(g.n, 0.0);
    f.coeffs_.assign(g.n, cplx(0.0));
    return f;
}

Field Field::from_values(const Grid& g, std::vector<double> values) {
    if (static_cast<int>(values.size()) != g.n) throw std::invalid_argument("value count does not match grid");
    Field f;
    f.grid_ = g;
    f.coeffs_ = fft::forward(values);
    f.values_ = std::move(values);
    return f;
}

Field Field::from_coeffs(const Grid& g, std::vector<cplx> coeffs) {
    if (static_cast<int>(coeffs.size()) != g.n) throw std::invalid_argument("coefficient count does not match grid");
    Field f;
    f.grid_ = g;
    auto z = fft::inverse(coeffs);
    f.values_.resize(g.n);
    for (int j = 0; j < g.n; ++j) f.values_[j] = z[j].real();
    f.coeffs_ = std::move(coeffs);
    return f;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Field::imag_residue() const {
    auto z = fft::inverse(coeffs_);
    double m = 0.0;
    for (const auto& c : z) m = std::max(m, std::abs(c.imag()));
    return m;
}

double Field::hermitian_defect() const {
    const int n = grid_.n;
    double scale = 0.0, d = 0.0;
    for (int j = 0; j < n; ++j) {
        scale = std::max(scale, std::abs(coeffs_[j]));
        const int jm = (n - j) % n;
        d = std::max(d, std::abs(coeffs_[j] - std::conj(coeffs_[jm])));
    }
    return scale > 0.0 ? d / scale : 0.0;
}

Field Field::resample(int n_new) const {
    Grid g(n_new, grid_.L);
    const int n = grid_.n;
    if (n_new == n) return *this;
    std::vector<cplx> c(n_new, cplx(0.0));
    const double scale = static_cast<double>(n_new) / n;
    if (n_new > n) {
        for (int j = 0; j < n; ++j) {
            const int m = grid_.mode(j);
            if (m == -n / 2) {
                // split the Nyquist content symmetrically so the result stays real
                c[n / 2] += 0.5 * scale * coeffs_[j];
                c[n_new - n / 2] += 0.5 * scale * coeffs_[j];
            } else {
                c[(m + n_new) % n_new] += scale * coeffs_[j];
            }
        }
    } else {
        for (int j = 0; j < n; ++j) {
            const int m = grid_.mode(j);
            if (std::abs(m) < n_new / 2)
                c[(m + n_new) % n_new] += scale * coeffs_[j];
            else if (std::abs(m) == n_new / 2)
                c[n_new / 2] += scale * coeffs_[j];
        }
    }
    return from_coeffs(g, std::move(c));
}

Field Field::operator+(const Field& o) const {
    if (grid_ != o.grid_) throw std::invalid_argument("grid mismatch");
    std::vector<cplx> c(coeffs_);
    for (size_t j = 0; j < c.size(); ++j) c[j] += o.coeffs_[j];
    return from_coeffs(grid_, std::move(c));
}

Field Field::operator-(const Field& o) const {
    if (grid_ != o.grid_) throw std::invalid_argument("grid mismatch");
    std::vector<cplx> c(coeffs_);
    for (size_t j = 0; j < c.size(); ++j) c[j] -= o.coeffs_[j];
    return from_coeffs(grid_, std::move(c));
}

Field Field::operator*(double a) const {
    std::vector<cplx> c(coeffs_);
    for (auto& z : c) z *= a;
    return from_coeffs(grid_, std::move(c));
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (const auto& c : f.coeffs()) s += std::norm(c);
    const double n = f.size();
    return std::sqrt(f.grid().L * s / (n * n));
}

double l2_distance(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("grid mismatch");
    double s = 0.0;
    for (int j = 0; j < a.size(); ++j) s += std::norm(a.coeff(j) - b.coeff(j));
    const double n = a.size();
    return std::sqrt(a.grid().L * s / (n * n));
}

}  // namespace dgbo
