#include <gtest/gtest.h>

#include <filesystem>

#include "dgbo/analysis.hpp"
#include "dgbo/evolve.hpp"
#include "dgbo/init.hpp"
#include "dgbo/io.hpp"
#include "dgbo/trajectory.hpp"
#include "helpers.hpp"

using namespace dgbo;
using namespace dgbo::testing;

namespace {

SolverConfig fixed(double dt, double T) {
    SolverConfig c;
    c.dt = dt;
    c.t_end = T;
    return c;
}

}  // namespace

TEST(Energy, MassOfSine) {
    Grid g(64, 2 * kPi);
    EXPECT_NEAR(mass(sample(g, [](double x) { return std::sin(x); })), kPi, 1e-14);
}

TEST(Energy, BothFormsForSineWithCubicFlux) {
    Grid g(64, 2 * kPi);
    const Field f = sample(g, [](double x) { return std::sin(x); });
    EquationParams p{2.0, 2, 1.0};
    // int sin^4 = 3 pi / 4
    EXPECT_NEAR(energy(f, p, EnergyForm::PrintedCoupling), 5 * kPi / 16, 1e-13);
    EXPECT_NEAR(energy(f, p, EnergyForm::Hamiltonian), 9 * kPi / 16, 1e-13);
}

TEST(Evolve, ZeroDataStaysZero) {
    Grid g(64, 20.0);
    const RunResult r = run(Field::zeros(g), EquationParams{}, fixed(0.01, 0.2));
    EXPECT_EQ(r.final_state.field.max_abs(), 0.0);
}

TEST(Evolve, TinyDataFollowsTheFreeGroup) {
    Grid g(128, 30.0);
    const Field u0 = gaussian(g, 1e-6, 1.5);
    EquationParams p{1.6, 3, 1.0};
    const RunResult r = run(u0, p, fixed(0.01, 0.5));
    EXPECT_LT(max_diff(r.final_state.field, free_evolve(u0, 0.5, 1.6)), 1e-13 * 1e-6);
}

TEST(Evolve, ConservesMassAndEnergy) {
    Grid g(256, 50.0);
    const Field u0 = gaussian(g, 1.0, 2.0);
    EquationParams p{2.0, 2, 1.0};
    const RunResult r = run(u0, p, fixed(1e-3, 1.0));
    const Field& u = r.final_state.field;
    EXPECT_NEAR(mass(u), mass(u0), 1e-11 * mass(u0));
    EXPECT_NEAR(energy(u, p), energy(u0, p), 1e-8 * std::abs(energy(u0, p)));
}

TEST(Evolve, FourthOrderInTime) {
    Grid g(128, 50.0);
    const Field u0 = gaussian(g, 1.0, 2.0);
    EquationParams p{2.0, 2, 1.0};
    const Field ref = run(u0, p, fixed(0.05 / 32, 0.5)).final_state.field;
    const double e1 = l2_distance(run(u0, p, fixed(0.05, 0.5)).final_state.field, ref);
    const double e2 = l2_distance(run(u0, p, fixed(0.025, 0.5)).final_state.field, ref);
    EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.4);
}

TEST(Evolve, LandsOnRequestedTimes) {
    Grid g(64, 20.0);
    SolverConfig c = fixed(0.03, 0.1);
    c.land_on = {0.05};
    std::vector<double> seen;
    run(gaussian(g, 0.3, 1.0), EquationParams{}, c, {[&](const SolverState& s) { seen.push_back(s.t); }});
    EXPECT_NE(std::find(seen.begin(), seen.end(), 0.05), seen.end());
    EXPECT_DOUBLE_EQ(seen.back(), 0.1);
}

TEST(Evolve, RejectsInvalidConfig) {
    EXPECT_THROW(fixed(-1.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW((EquationParams{0.5, 2, 1.0}).validate(), std::invalid_argument);
    EXPECT_THROW((EquationParams{2.0, 2, 0.5}).validate(), std::invalid_argument);
}

TEST(Evolve, ScalingMapsSolutionsToSolutions) {
    Grid g(128, 40.0);
    const Field u0 = gaussian(g, 0.8, 2.0);
    EquationParams p{1.5, 2, 1.0};
    const double lambda = 2.0;
    const double T = 0.2;
    const Field a = rescale(run(u0, p, fixed(1e-3, T)).final_state.field, lambda, p);
    const double Tl = T * std::pow(lambda, p.alpha + 1.0);
    const Field b = run(rescale(u0, lambda, p), p, fixed(1e-3 * std::pow(lambda, p.alpha + 1.0), Tl)).final_state.field;
    EXPECT_LT(l2_distance(a, b), 1e-10 * l2_norm(a));
}

TEST(Checkpoint, ResumedRunMatchesUninterrupted) {
    const auto dir = std::filesystem::temp_directory_path() / "dgbo_ckpt_test";
    std::filesystem::create_directories(dir);
    Grid g(128, 40.0);
    const Field u0 = gaussian(g, 1.0, 2.0);
    EquationParams p{2.0, 3, 1.0};
    const Field whole = run(u0, p, fixed(1e-3, 0.4)).final_state.field;
    const Field half = run(u0, p, fixed(1e-3, 0.2)).final_state.field;
    io::write_field((dir / "half").string(), half, 0.2);
    const io::StoredField back = io::read_field((dir / "half").string());
    EXPECT_DOUBLE_EQ(back.t, 0.2);
    const Field resumed = run(back.field, p, fixed(1e-3, 0.2)).final_state.field;
    EXPECT_LT(l2_distance(resumed, whole), 1e-12);
    std::filesystem::remove_all(dir);
}

TEST(Io, FieldRoundTripIsBitExact) {
    const auto stem = (std::filesystem::temp_directory_path() / "dgbo_io_test").string();
    Grid g(32, 3.5);
    const Field f = random_hs(g, 0.5, 1.0, 11, 10);
    io::write_field(stem, f, 1.25);
    const io::StoredField r = io::read_field(stem);
    EXPECT_EQ(r.field.grid(), g);
    for (int j = 0; j < g.n; ++j) EXPECT_EQ(r.field.value(j), f.value(j));
    std::filesystem::remove(stem + ".json");
    std::filesystem::remove(stem + ".bin");
}

TEST(Io, MissingFieldThrows) { EXPECT_ANY_THROW(io::read_field("/nonexistent/dgbo/stem")); }

TEST(Init, RandomDataIsReproducibleAndScaled) {
    Grid g(256, 20.0);
    const Field a = random_hs(g, 0.25, 0.3, 9, 60);
    const Field b = random_hs(g, 0.25, 0.3, 9, 60);
    EXPECT_EQ(max_diff(a, b), 0.0);
    EXPECT_NEAR(l2_norm(a) / std::sqrt(g.L), 0.3, 1e-12);
    EXPECT_NEAR(a.mean(), 0.0, 1e-15);
}
