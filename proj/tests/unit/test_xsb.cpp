#include <gtest/gtest.h>

#include "dgbo/init.hpp"
#include "dgbo/xsb.hpp"
#include "helpers.hpp"

using namespace dgbo;
using namespace dgbo::testing;

TEST(Taper, VanishesAtTheEdgesAndPeaksAtTheCenter) {
    EXPECT_DOUBLE_EQ(temporal_taper(0.0, 0.0, 2.0), 0.0);
    EXPECT_DOUBLE_EQ(temporal_taper(1.0, 0.0, 2.0), 1.0);
    EXPECT_LT(taper_leakage(256), 1e-2);
}

TEST(Xsb, ZeroWeightsGiveTheTaperedL2Norm) {
    Grid g(64, 20.0);
    const Field f = gaussian(g, 1.0, 2.0);
    const SpaceTimeSample u = sample_free_flow(f, 2.0, 0.0, 2.0, 64);
    double direct = 0.0;
    for (int i = 0; i < u.nt(); ++i) {
        const double w = temporal_taper(u.t0 + i * u.dt, u.t0, u.window());
        for (double v : u.values[i]) direct += w * w * v * v;
    }
    direct *= g.dx() * u.dt;
    const double norm = xsb_norm(u, 0.0, 0.0, 2.0);
    EXPECT_NEAR(norm * norm, direct, 1e-12 * direct);
}

TEST(Xsb, FreeWavesSeeOnlyTheTaper) {
    // For a free wave the modulation weight reduces to that of the taper, so the ratio of the
    // b = 1/2 and b = 0 norms does not depend on the profile.
    Grid g(128, 40.0);
    const Field f1 = gaussian(g, 1.0, 2.0);
    const Field f2 = wave_packet(g, 1.0, 3.0, 1.5, 0.0);
    auto ratio = [&](const Field& f) {
        const SpaceTimeSample u = sample_free_flow(f, 2.0, 0.0, 4.0, 512);
        return xsb_norm(u, 0.0, 0.5, 2.0) / xsb_norm(u, 0.0, 0.0, 2.0);
    };
    EXPECT_NEAR(ratio(f1) / ratio(f2), 1.0, 0.05);
}

TEST(Xsb, RejectsBadSamples) {
    SpaceTimeSample u;
    u.grid = Grid(8, 1.0);
    u.dt = 0.1;
    u.values = {std::vector<double>(7)};
    EXPECT_THROW(u.validate(), std::invalid_argument);
}

TEST(Multilinear, ZeroFactorGivesNaN) {
    Grid g(32, 10.0);
    const SpaceTimeSample z = sample_free_flow(Field::zeros(g), 2.0, 0.0, 1.0, 32);
    EXPECT_TRUE(std::isnan(multilinear_ratio(z, z, z, z, 0.0, 0.55, 2.0)));
}
