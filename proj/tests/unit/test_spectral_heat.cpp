#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatcontent/heat_content_nd.hpp"
#include "heatcontent/spectral_heat.hpp"

using namespace heat;

namespace {
McBudget budget(std::uint64_t samples, std::uint64_t seed) {
    McBudget b;
    b.samples = samples;
    b.seed = seed;
    return b;
}
}  // namespace

TEST(SpectralHeat, RefinementIsMonotone) {
    const auto disk = Domain::ball(2, 1.0);
    const auto est = spectral_heat_content(AlphaParam(1.0), disk, 1e-2, {}, budget(1 << 15, 3));
    ASSERT_EQ(est.levels.size(), 4u);
    for (std::size_t i = 1; i < est.levels.size(); ++i) {
        EXPECT_EQ(est.levels[i].n_steps, 2 * est.levels[i - 1].n_steps);
        EXPECT_LE(est.levels[i].q, est.levels[i - 1].q);
    }
    EXPECT_LE(est.q_extrapolated, est.levels.back().q);
    EXPECT_NEAR(est.deficit_extrapolated, est.volume - est.q_extrapolated, 1e-12);
}

TEST(SpectralHeat, DeficitDominatesHeatContent) {
    // Exiting at time t implies having exited by time t.
    const auto disk = Domain::ball(2, 1.0);
    for (double a : {0.5, 1.5}) {
        const auto est = spectral_heat_content(AlphaParam(a), disk, 1e-2, {}, budget(1 << 15, 5));
        const double h = heat_content_nd(AlphaParam(a), disk, 1e-2, EstimateMethod::SubordinationQuadrature).value;
        EXPECT_GE(est.levels.front().deficit + 3 * est.levels.front().deficit_err, h) << a;
    }
}

TEST(SpectralHeat, CurveNonIncreasing) {
    const auto curve = spectral_heat_curve(AlphaParam(1.2), Domain::ball(2, 1.0), 0.05, 20, budget(1 << 13, 2));
    ASSERT_EQ(curve.t.size(), curve.q.size());
    for (std::size_t i = 1; i < curve.q.size(); ++i) EXPECT_LE(curve.q[i], curve.q[i - 1]);
}

TEST(SpectralHeat, SandwichHolds) {
    const auto disk = Domain::ball(2, 1.0);
    const auto rep = sandwich_check(AlphaParam(1.0), disk, 1e-3, {}, budget(1 << 15, 7));
    EXPECT_TRUE(rep.lower_ok);
    EXPECT_TRUE(rep.upper_ok);
    EXPECT_EQ(rep.bounds.layers, 64);
    EXPECT_LE(rep.bounds.upper, rep.bounds.moment_upper);
}

TEST(SpectralHeat, BrownianLeadingTerm) {
    const auto disk = Domain::ball(2, 1.0);
    const double t = 1e-3;
    const auto est = spectral_heat_content(AlphaParam(2.0), disk, t, {}, budget(1 << 15, 9));
    const double leading = 2.0 / std::sqrt(std::numbers::pi) * 2.0 * std::numbers::pi * std::sqrt(t);
    EXPECT_NEAR(est.deficit_extrapolated / leading, 1.0, 0.15);
}

TEST(SpectralHeat, SubordinationExitCoupling) {
    const auto disk = Domain::ball(2, 1.0);
    const std::vector<double> x{0.9, 0.0};
    const auto chk = subordination_exit_check(AlphaParam(1.0), disk, x, 1e-2, 32, 4, budget(1 << 14, 4));
    EXPECT_TRUE(chk.pass());
    EXPECT_LE(chk.p_stable, chk.p_brownian);
}

TEST(SpectralHeat, ExteriorVolumeLowerBound) {
    const auto chk = exterior_volume_check(Domain::ball(2, 1.0), 0.5, 200, 1);
    EXPECT_TRUE(chk.pass());
    EXPECT_GE(chk.min_ratio, 1.0);
    EXPECT_NEAR(chk.constant, std::numbers::pi / 2, 1e-15);
}

TEST(SpectralHeat, DeterministicAcrossThreads) {
    const auto disk = Domain::ball(2, 1.0);
    auto b1 = budget(1 << 14, 11);
    b1.batch_size = 1 << 11;
    b1.threads = 1;
    auto b4 = b1;
    b4.threads = 4;
    const auto e1 = spectral_heat_content(AlphaParam(1.5), disk, 1e-3, {}, b1);
    const auto e4 = spectral_heat_content(AlphaParam(1.5), disk, 1e-3, {}, b4);
    for (std::size_t i = 0; i < e1.levels.size(); ++i) EXPECT_EQ(e1.levels[i].q, e4.levels[i].q);
    EXPECT_EQ(e1.q_extrapolated, e4.q_extrapolated);
}
