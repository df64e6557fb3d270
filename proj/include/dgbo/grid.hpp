#pragma once

#include <complex>
#include <vector>

namespace dgbo {

using cplx = std::complex<double>;

// Periodic lattice x_j = j*L/n with FFT-ordered wavenumbers 2*pi*m/L,
// m in {0, 1, ..., n/2-1, -n/2, ..., -1}. Index n/2 is the Nyquist mode.
struct Grid {
    int n = 0;
    double L = 0.0;

    Grid() = default;
    Grid(int n, double L);

    double dx() const { return L / n; }
    double x(int j) const { return j * L / n; }
    int mode(int j) const { return j < n / 2 ? j : j - n; }
    double wavenumber(int j) const;
    bool is_nyquist(int j) const { return j == n / 2; }

    std::vector<double> xs() const;
    std::vector<double> ks() const;

    bool operator==(const Grid& o) const { return n == o.n && L == o.L; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Real grid function together with its unnormalized DFT coefficients.
class Field {
public:
    Field() = default;

    static Field zeros(const Grid& g);
    static Field from_values(const Grid& g, std::vector<double> values);
    // Coefficients are kept as given; values are the real part of the inverse transform.
    static Field from_coeffs(const Grid& g, std::vector<cplx> coeffs);

    const Grid& grid() const { return grid_; }
    int size() const { return grid_.n; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    double value(int j) const { return values_[j]; }
    cplx coeff(int j) const { return coeffs_[j]; }

    double mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0].real() / grid_.n; }
    double max_abs() const;
    // max |Im| of the inverse transform of the stored coefficients
    double imag_residue() const;
    // max deviation from c(-m) = conj(c(m)), relative to the largest coefficient
    double hermitian_defect() const;

    // Spectral interpolation onto n_new points (zero padding or truncation).
    Field resample(int n_new) const;

    Field operator+(const Field& o) const;
    Field operator-(const Field& o) const;
    Field operator*(double a) const;

private:
    Grid grid_;
    std::vector<double> values_;
    std::vector<cplx> coeffs_;
};

// Discrete L2 norm sqrt(dx * sum |u_j|^2).
double l2_norm(const Field& f);
double l2_distance(const Field& a, const Field& b);

}  // namespace dgbo
