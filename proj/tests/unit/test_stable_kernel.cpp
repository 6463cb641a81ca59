#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "heatcontent/stable_kernel.hpp"

using namespace heat;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(StableKernel, GaussianAndCauchyClosedForms) {
    for (int d : {1, 2, 3}) {
        const double t = 0.3, r = 0.8;
        const auto g = kernel_eval(AlphaParam(2.0), d, t, r);
        EXPECT_EQ(g.method, KernelMethod::ClosedFormGaussian);
        EXPECT_NEAR(g.value, std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t)), 1e-15);
    }
    EXPECT_NEAR(kernel_eval(AlphaParam(1.0), 1, 1.0, 2.0).value, 1.0 / (5.0 * kPi), 1e-15);
    EXPECT_NEAR(kernel_eval(AlphaParam(1.0), 3, 1.0, 2.0).value, 0.00405284734569351, 1e-16);
}

TEST(StableKernel, CauchyQuadratureRouteMatchesClosedForm) {
    // Same alpha through the generic route: alpha slightly off 1 must be continuous.
    const double v = kernel_eval(AlphaParam(1.0 + 1e-9), 2, 1.0, 0.7).value;
    const double exact = 1.0 / (2.0 * kPi) * std::pow(1.0 + 0.49, -1.5);
    EXPECT_NEAR(v / exact, 1.0, 1e-7);
}

TEST(StableKernel, SatoSeriesOracle) {
    // p_{1/2}(10) in d = 1 at t = 1; checked against an independent 25-digit series
    // and oscillatory quadrature of the Fourier integral.
    const auto k = kernel_eval(AlphaParam(0.5), 1, 1.0, 10.0);
    EXPECT_EQ(k.method, KernelMethod::SatoSeries);
    EXPECT_NEAR(k.value, 0.004872255383721, 2e-12);
    // Both sides of the series switch agree.
    KernelOptions force_quad;
    force_quad.series_from = 1e300;
    EXPECT_NEAR(kernel_eval(AlphaParam(0.5), 1, 1.0, 10.0, force_quad).value / k.value, 1.0, 1e-9);
}

TEST(StableKernel, ScalingAndNormalisation) {
    for (double a : {0.6, 1.3, 1.8}) {
        for (int d : {1, 2, 3}) {
            EXPECT_NEAR(kernel_mass(AlphaParam(a), d, 1.0).value, 1.0, 1e-6) << a << " " << d;
            const double t = 0.2, r = 0.9;
            const double lhs = kernel_eval(AlphaParam(a), d, t, r).value;
            const double c = std::pow(t, -1.0 / a);
            const double rhs = std::pow(c, d) * kernel_eval(AlphaParam(a), d, 1.0, r * c).value;
            EXPECT_NEAR(lhs / rhs, 1.0, 1e-9);
        }
    }
}

TEST(StableKernel, TailConstantsOracle) {
    EXPECT_NEAR(tail_constant(AlphaParam(0.5), 2).value, 0.0832419838754251, 1e-13);
    EXPECT_NEAR(tail_constant(AlphaParam(1.0), 1).value, 0.318309886183791, 1e-13);
    EXPECT_NEAR(tail_constant(AlphaParam(1.5), 3).value, 0.119050567376702, 1e-13);
}

TEST(StableKernel, TailLimitApproached) {
    const auto chk = kernel_tail_limit_check(AlphaParam(0.8), 2, 1.0);
    ASSERT_FALSE(chk.rel_error.empty());
    EXPECT_LT(chk.rel_error.back(), 1e-3);
    EXPECT_DOUBLE_EQ(chk.limit, kernel_tail_limit(AlphaParam(0.8), 2, 1.0));
}

TEST(StableKernel, SatoCoefficientsBounded) {
    const auto c = sato_coefficients(0.5, 30);
    ASSERT_EQ(c.a.size(), 30u);
    for (int n = 1; n <= 30; ++n) EXPECT_LE(std::abs(c.a[n - 1]), sato_coefficient_bound(0.5, n) / kPi * (1 + 1e-12));
    const auto s = sato_series(0.5, 10.0);
    EXPECT_NEAR(s.value, 0.004872255383721, 2e-12);
}

TEST(StableKernel, CauchyIncrementKolmogorovSmirnov) {
    RandomStream rng(9);
    std::vector<double> xs(100000);
    for (double& x : xs) x = sample_stable_increment(AlphaParam(1.0), 1, 2.0, rng)[0];
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = 0.5 + std::atan(xs[i] / 2.0) / kPi;
        ks = std::max({ks, std::abs(F - i / n), std::abs((i + 1) / n - F)});
    }
    EXPECT_LT(ks, 0.01);
}

TEST(StableKernel, IsotropicIncrementRadius) {
    // P(|X_1| > r) for the 2D Cauchy law is (1 + r^2)^{-1/2}.
    RandomStream rng(3);
    int over = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const auto x = sample_stable_increment(AlphaParam(1.0), 2, 1.0, rng);
        if (std::hypot(x[0], x[1]) > 2.0) ++over;
    }
    const double p = 1.0 / std::sqrt(5.0);
    EXPECT_NEAR(static_cast<double>(over) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(StableKernel, EnvelopeBand) {
    const std::vector<double> ts{0.01, 0.1, 1.0};
    const std::vector<double> rs{0.0, 0.3, 1.0, 5.0, 40.0};
    const auto band = calibrate_kernel_envelope(AlphaParam(1.2), 2, ts, rs);
    EXPECT_GT(band.min_ratio, 0.0);
    EXPECT_LT(band.max_ratio / band.min_ratio, 1e3);
}

TEST(StableKernel, SphereAndBall) {
    EXPECT_NEAR(sphere_area(2), 2 * kPi, 1e-15);
    EXPECT_NEAR(sphere_area(3), 4 * kPi, 1e-14);
    EXPECT_NEAR(ball_volume(3), 4 * kPi / 3, 1e-14);
}
