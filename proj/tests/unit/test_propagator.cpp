#include <gtest/gtest.h>

#include "dgbo/fit.hpp"
#include "dgbo/init.hpp"
#include "dgbo/propagator.hpp"
#include "helpers.hpp"

using namespace dgbo;
using namespace dgbo::testing;

TEST(Propagator, DispersionRelation) {
    EXPECT_DOUBLE_EQ(dispersion(2.0, 2.0), 8.0);
    EXPECT_DOUBLE_EQ(dispersion(-2.0, 1.0), -4.0);
}

TEST(Propagator, PlaneWaveTravelsAtPhaseSpeed) {
    Grid g(32, 2 * kPi);
    const double t = 0.37;
    const Field f = sample(g, [](double x) { return std::cos(2 * x); });
    // omega(2) = 2 * 2^1.5
    const double w = 2.0 * std::pow(2.0, 1.5);
    const Field expect = sample(g, [&](double x) { return std::cos(2 * x - w * t); });
    EXPECT_LT(max_diff(free_evolve(f, t, 1.5), expect), 1e-13);
}

TEST(Propagator, GroupPropertyAndUnitarity) {
    Grid g(128, 40.0);
    const Field f = gaussian(g, 1.0, 2.0);
    const Field a = free_evolve(free_evolve(f, 0.3, 1.7), 0.9, 1.7);
    const Field b = free_evolve(f, 1.2, 1.7);
    EXPECT_LT(max_diff(a, b), 1e-13);
    EXPECT_NEAR(l2_norm(b), l2_norm(f), 1e-13);
    EXPECT_LT(max_diff(free_evolve(b, -1.2, 1.7), f), 1e-13);
}

TEST(Propagator, KeepsFieldsReal) {
    Grid g(64, 10.0);
    const Field f = random_hs(g, 0.0, 1.0, 5, 20);
    EXPECT_LT(free_evolve(f, 3.0, 2.0).imag_residue(), 1e-13);
}

TEST(Exponents, StrichartzEndpoint) {
    EXPECT_DOUBLE_EQ(strichartz_gamma(kInf, 2.0, 2.0).gamma, 1.0);
    EXPECT_DOUBLE_EQ(strichartz_gamma(kInf, 2.0, 1.5).gamma, 0.75);
}

TEST(Exponents, ExcludedPairThrows) { EXPECT_THROW(strichartz_gamma(kInf, kInf, 2.0), std::invalid_argument); }

TEST(Exponents, CriticalIndex) {
    EXPECT_DOUBLE_EQ(critical_index(2.0, 4), 0.0);
    EXPECT_DOUBLE_EQ(critical_index(1.5, 4), 0.125);
    EXPECT_DOUBLE_EQ(critical_index(1.0, 2), 0.0);
}

TEST(Exponents, ScatteringExponentsAtCriticalData) {
    const auto [p, q] = scattering_exponents(0.0, 2.0, 4);
    EXPECT_DOUBLE_EQ(p, 5.0);
    EXPECT_DOUBLE_EQ(q, 10.0);
}

TEST(Decay, FreeGaussianDecaysAtTheDispersiveRate) {
    Grid g(8192, 2048.0);
    const Field f = gaussian(g, 1.0, 1.0);
    std::vector<double> ts;
    for (int i = 0; i <= 12; ++i) ts.push_back(std::pow(60.0, i / 12.0));
    const DecayFit fit = dispersive_decay_fit(f, 2.0, ts);
    EXPECT_NEAR(fit.slope, -1.0 / 3.0, 0.05);
}

TEST(Fit, RecoversPowerLaw) {
    std::vector<double> x, y;
    for (int i = 1; i <= 8; ++i) {
        x.push_back(i);
        y.push_back(3.0 * std::pow(i, -1.25));
    }
    const LinearFit f = loglog_fit(x, y);
    EXPECT_NEAR(f.slope, -1.25, 1e-13);
    EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
}

TEST(Fit, RejectsNonpositiveData) { EXPECT_THROW(loglog_fit({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument); }
