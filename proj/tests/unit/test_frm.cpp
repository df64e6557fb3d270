#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dgbo/frm.hpp"

using namespace dgbo::frm;

TEST(Phase, ClosedFormExample) {
    // 1.25^3 - 1 - 1/8 + 1/64
    EXPECT_NEAR(phase(1.0, 0.5, -0.25, 0.0, 2.0), 27.0 / 32.0, 1e-15);
}

TEST(Phase, SymmetricAndVanishingOnSingleFrequencies) {
    EXPECT_NEAR(phase(0.3, -1.1, 0.7, 2.0, 1.6), phase(2.0, 0.7, -1.1, 0.3, 1.6), 1e-13);
    EXPECT_DOUBLE_EQ(phase(1.7, 0.0, 0.0, 0.0, 1.3), 0.0);
}

TEST(LevelBand, SaturatesAtTheFullSquare) {
    const double N = 10.0;
    EXPECT_NEAR(level_band_area(1e6, 0.0, N, +1), 4 * N * N, 1e-9 * N * N);
    EXPECT_NEAR(level_band_area(1e6, 0.0, N, -1), 4 * N * N, 1e-9 * N * N);
}

TEST(LevelBand, LinearInThinBands) {
    // {|p^2 + q^2| < M} is a disc of radius sqrt(M): area pi M
    EXPECT_NEAR(level_band_area(1e-2, 0.0, 10.0, +1), std::numbers::pi * 1e-2, 1e-10);
    const double a = level_band_area(1e-3, 50.0, 10.0, +1);
    const double b = level_band_area(2e-3, 50.0, 10.0, +1);
    EXPECT_NEAR(b / a, 2.0, 1e-3);
}

TEST(FitM, RecoversSyntheticExponent) {
    std::vector<double> Ms;
    for (int i = 0; i < 7; ++i) Ms.push_back(std::pow(2.0, i));
    const MFit f = fit_M_exponent([](size_t i, double M) { return (1.0 + i) * M * M; }, Ms, 3);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_FALSE(f.saturated);
}

TEST(FitM, FlagsSaturation) {
    std::vector<double> Ms;
    for (int i = 0; i < 6; ++i) Ms.push_back(std::pow(2.0, i));
    const MFit f = fit_M_exponent({std::vector<double>(6, 3.0)}, Ms);
    EXPECT_TRUE(f.saturated);
    EXPECT_NEAR(f.slope, 0.0, 1e-14);
}

TEST(FitM, RejectsShortGrids) { EXPECT_THROW(fit_M_exponent({{1.0, 2.0}}, {1.0, 2.0}), std::invalid_argument); }

TEST(RestrictedIntegrals, NonnegativeAndMonotoneInM) {
    const double alpha = 1.8, s = 0.1;
    double prev1 = 0.0, prev2 = 0.0, prevj = 0.0;
    for (double M : {0.5, 1.0, 2.0, 4.0}) {
        const double i1 = I1_integral(8.0, 2.0, 10.0, s, M, alpha);
        const double j2 = J2_integral(8.0, 1.0, 10.0, s, M, alpha);
        const double j1 = J1_integral(6.0, 5.0, 4.0, 0.0, s, M, alpha);
        EXPECT_GE(i1, prev1 * (1 - 1e-9));
        EXPECT_GE(j2, prev2 * (1 - 1e-9));
        EXPECT_GE(j1, prevj * (1 - 1e-9));
        prev1 = i1;
        prev2 = j2;
        prevj = j1;
    }
    EXPECT_GT(prev1, 0.0);
}

TEST(RestrictedIntegrals, SaturateOnceTheBandCoversThePhaseRange) {
    const auto [lo, hi] = phi_range_J1(6.0, 5.0, 4.0, 2.0);
    const double M = 2.0 * (std::abs(lo) + std::abs(hi)) + 1.0;
    const double a = J1_integral(6.0, 5.0, 4.0, 0.0, 0.2, M, 2.0);
    const double b = J1_integral(6.0, 5.0, 4.0, 0.0, 0.2, 10.0 * M, 2.0);
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(a, b, 1e-9 * b);
}

TEST(Cs, ResultsGrowWithM) {
    const CsResult r = cs_integral(0.5, 0.2, {0.01, 0.1, 1.0}, 2.0, 1.0 / 32.0);
    ASSERT_EQ(r.values.size(), 3u);
    EXPECT_LE(r.values[0], r.values[1]);
    EXPECT_LE(r.values[1], r.values[2]);
    EXPECT_LE(r.values[2], r.unrestricted * (1 + 1e-12));
}
