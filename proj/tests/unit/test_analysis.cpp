#include <gtest/gtest.h>

#include "dgbo/analysis.hpp"
#include "dgbo/imethod.hpp"
#include "dgbo/init.hpp"
#include "dgbo/smoothing.hpp"
#include "dgbo/trajectory.hpp"
#include "helpers.hpp"

using namespace dgbo;
using namespace dgbo::testing;

TEST(IMultiplier, IsIdentityBelowN) {
    Grid g(128, 2 * kPi);
    const Field f = sample(g, [](double x) { return std::cos(3 * x) + std::sin(7 * x); });
    const IMultiplier m = make_I_multiplier(g, 16.0, -0.3);
    EXPECT_LT(max_diff(apply_I(f, m), f), 1e-14);
    EXPECT_NEAR(I_energy(f, m), mass(f), 1e-13);
}

TEST(IMultiplier, DampsHighModesByThePowerLaw) {
    EXPECT_DOUBLE_EQ(imultiplier_symbol(5.0, 8.0, -0.5), 1.0);
    EXPECT_NEAR(imultiplier_symbol(32.0, 8.0, -0.5), 0.5, 1e-15);
    EXPECT_THROW(make_I_multiplier(Grid(16, 1.0), 4.0, 0.1), std::invalid_argument);
}

TEST(IMethod, LambdaExponentMatchesTheFormula) {
    // the formula is the delta -> 0 limit; delta = 0.01 alone moves the exponent to about 1.18
    const LambdaCheck c = lambda_scaling_check(-0.1, 2.0, {16, 32, 64, 128}, 1e-4);
    EXPECT_NEAR(c.fitted_exponent, c.formula_exponent, 0.03 * std::abs(c.formula_exponent));
}

TEST(MixedNorm, ConstantInTimeField) {
    Grid g(64, 2 * kPi);
    const Field f = sample(g, [](double) { return 2.0; });
    Trajectory tr;
    tr.params = EquationParams{};
    for (int i = 0; i <= 4; ++i) {
        tr.times.push_back(0.25 * i);
        tr.fields.push_back(f);
    }
    // |2|_{L^p_x L^q_t} over unit time: 2 * (2 pi)^{1/p}
    EXPECT_NEAR(mixed_norm(tr, 2.0, 4.0, 0.0), 2.0 * std::sqrt(2 * kPi), 1e-12);
}

TEST(Scattering, FreeFlowScattersToItsData) {
    Grid g(256, 64.0);
    // the nonlinear terms are of relative size 1e-24 at this amplitude
    const Field f = gaussian(g, 1e-6, 2.0);
    EquationParams p{2.0, 4, 1.0};
    const Trajectory tr = linear_trajectory(f, p, uniform_times(0.0, 4.0, 40));
    const ScatteringReport r = scattering_monitor(tr);
    EXPECT_LT(l2_distance(r.u_plus, f), 1e-13 * l2_norm(f));
    for (double m : r.mismatch) EXPECT_LT(m, 1e-12 * l2_norm(f));
}

TEST(Smoothing, PredictedGain) {
    EXPECT_DOUBLE_EQ(smoothing_eps_pred(0.25, 2.0), 0.75);
    EXPECT_NEAR(smoothing_eps_pred(0.0, 1.6), 0.1, 1e-15);
    EXPECT_NEAR(smoothing_eps_pred(0.0, 2.0), 0.5, 1e-15);
}
