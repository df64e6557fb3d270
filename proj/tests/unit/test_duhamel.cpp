#include <gtest/gtest.h>

#include "dgbo/duhamel.hpp"
#include "dgbo/init.hpp"
#include "dgbo/trajectory.hpp"
#include "helpers.hpp"

using namespace dgbo;
using namespace dgbo::testing;

TEST(CumulativeIntegral, ExactForCubics) {
    const double h = 0.1;
    std::vector<std::vector<cplx>> f(12, std::vector<cplx>(1));
    for (int i = 0; i < 12; ++i) {
        const double t = i * h;
        f[i][0] = cplx(t * t * t - 2 * t, t * t);
    }
    const auto F = cumulative_integral(f, h);
    for (int i = 0; i < 12; ++i) {
        const double t = i * h;
        // the index-1 start is only third order, so allow its h^4 error there
        const double tol = i == 1 ? 1e-4 : 1e-13;
        EXPECT_NEAR(F[i][0].real(), t * t * t * t / 4 - t * t, tol) << i;
        EXPECT_NEAR(F[i][0].imag(), t * t * t / 3, 1e-13) << i;
    }
}

TEST(Picard, ZeroIterationsGiveTheFreeFlow) {
    Grid g(64, 20.0);
    const Field u0 = gaussian(g, 0.2, 1.5);
    const PicardReport r = picard_solve(u0, EquationParams{2.0, 2, 1.0}, 0.1, 0, 20);
    EXPECT_LT(max_diff(r.traj.fields.back(), free_evolve(u0, 0.1, 2.0)), 1e-14);
}

TEST(Picard, AgreesWithTheTimeStepper) {
    Grid g(128, 50.0);
    const Field u0 = gaussian(g, 0.1, 2.0);
    EquationParams p{2.0, 4, 1.0};
    const PicardReport pic = picard_solve(u0, p, 0.1, 12, 200);
    SolverConfig c;
    c.dt = 1e-4;
    c.t_end = 0.1;
    const Trajectory ev = sample_run(u0, p, c, pic.traj.times);
    EXPECT_LT(sup_l2_gap(ev, pic.traj), 1e-8);
    EXPECT_LT(pic.contraction, 1.0);
}

TEST(Picard, LargeDataDoesNotContract) {
    Grid g(64, 20.0);
    const Field u0 = gaussian(g, 6.0, 1.0);
    EXPECT_THROW(picard_solve(u0, EquationParams{2.0, 4, 1.0}, 2.0, 12, 100), NoContraction);
}

TEST(Duhamel, FreeTrajectoryHasNoDuhamelPart) {
    Grid g(64, 20.0);
    const Field f = gaussian(g, 1.0, 1.0);
    const Trajectory tr = linear_trajectory(f, EquationParams{}, uniform_times(0.0, 1.0, 10));
    const Trajectory d = duhamel_part(tr);
    for (const auto& x : d.fields) EXPECT_LT(x.max_abs(), 1e-14);
}

TEST(WaveOperator, SmallDataContractsAndMatchesTheAsymptoticState) {
    Grid g(256, 64.0);
    const Field v0 = gaussian(g, 0.05, 4.0);
    const WaveOperatorReport r = wave_operator(v0, EquationParams{2.0, 4, 1.0}, 10.0, 30.0, 6, 400);
    EXPECT_LT(r.contraction, 1e-2);
    EXPECT_EQ(r.mismatch.back(), 0.0);
    EXPECT_LT(r.mismatch.front(), 1e-3 * l2_norm(v0));
}
