#include <gtest/gtest.h>

#include <random>

#include "dgbo/spectral.hpp"
#include "helpers.hpp"

using namespace dgbo;
using namespace dgbo::testing;

TEST(Grid, RejectsOddOrTinySizes) {
    EXPECT_THROW(Grid(7, 1.0), std::invalid_argument);
    EXPECT_THROW(Grid(8, -1.0), std::invalid_argument);
}

TEST(Grid, WavenumbersFollowFftOrder) {
    Grid g(8, 2 * kPi);
    EXPECT_DOUBLE_EQ(g.wavenumber(1), 1.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(7), -1.0);
    EXPECT_TRUE(g.is_nyquist(4));
}

TEST(Field, ParsevalHolds) {
    Grid g(128, 10.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.n);
    for (auto& x : v) x = nd(rng);
    const Field f = Field::from_values(g, v);
    double coeff_sum = 0.0;
    for (const auto& c : f.coeffs()) coeff_sum += std::norm(c);
    const double physical = l2_norm(f) * l2_norm(f);
    EXPECT_NEAR(physical, g.L * coeff_sum / (double(g.n) * g.n), 1e-12 * physical);
}

TEST(Field, ResampleRoundTripIsExactForBandLimitedData) {
    Grid g(32, 2 * kPi);
    const Field f = sample(g, [](double x) { return std::cos(3 * x) + 0.5 * std::sin(5 * x); });
    EXPECT_LT(max_diff(f.resample(128).resample(32), f), 1e-14);
}

TEST(Spectral, FractionalDerivativeOfSineMode) {
    Grid g(64, 2 * kPi);
    const Field f = sample(g, [](double x) { return std::sin(3 * x); });
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        const Field expect = sample(g, [a](double x) { return std::pow(3.0, a) * std::sin(3 * x); });
        EXPECT_LT(max_diff(fractional_derivative(f, a), expect), 1e-12) << "a = " << a;
    }
}

TEST(Spectral, HilbertMapsCosineToSine) {
    Grid g(64, 2 * kPi);
    const Field c = sample(g, [](double x) { return std::cos(2 * x); });
    const Field s = sample(g, [](double x) { return std::sin(2 * x); });
    EXPECT_LT(max_diff(hilbert(c), s), 1e-14);
}

TEST(Spectral, HilbertSquaredIsMinusIdentityOffMean) {
    Grid g(64, 5.0);
    const Field f = sample(g, [](double x) { return std::exp(std::cos(2 * kPi * x / 5.0)); });
    const double mean = f.mean();
    const Field hh = hilbert(hilbert(f));
    for (int j = 0; j < g.n; ++j) EXPECT_NEAR(hh.value(j), -(f.value(j) - mean), 1e-12);
}

TEST(Spectral, DerivativeMatchesHilbertOfFirstOrderSymbol) {
    Grid g(64, 2 * kPi);
    const Field f = sample(g, [](double x) { return std::sin(x) + std::cos(4 * x); });
    EXPECT_LT(check_symbol_identity(f, 2.0), 1e-11);
}

TEST(Spectral, DealiasCutoffFormula) {
    EXPECT_EQ(dealias_cutoff(64, 2), 21);
    EXPECT_EQ(dealias_cutoff(64, 3), 15);
    EXPECT_EQ(dealias_cutoff(256, 5), 42);
}

TEST(Spectral, ExactProductOfTrigPolynomials) {
    Grid g(16, 2 * kPi);
    const Field a = sample(g, [](double x) { return std::cos(5 * x); });
    const Field b = sample(g, [](double x) { return std::cos(6 * x); });
    // cos5 cos6 = (cos x + cos 11x)/2; mode 11 aliases on 16 points, so compare on a fine grid
    const Field p = exact_product(a, b);
    const Field expect = sample(p.grid(), [](double x) { return 0.5 * (std::cos(x) + std::cos(11 * x)); });
    EXPECT_LT(max_diff(p, expect), 1e-13);
}

TEST(Spectral, SobolevNormOfSingleMode) {
    Grid g(64, 2 * kPi);
    const Field f = sample(g, [](double x) { return std::cos(3 * x); });
    // |cos 3x|_{L2}^2 = pi, weight <3>^{2s} = 10^s
    EXPECT_NEAR(sobolev_norm(f, 1.0, false), std::sqrt(kPi * 10.0), 1e-12);
    EXPECT_NEAR(sobolev_norm(f, 1.0, true), std::sqrt(kPi * 9.0), 1e-12);
}
