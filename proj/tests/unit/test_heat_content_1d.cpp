#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatcontent/errors.hpp"
#include "heatcontent/heat_content_1d.hpp"

using namespace heat;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}
}  // namespace

TEST(HeatContent1D, CauchyOracles) {
    EXPECT_NEAR(cauchy_heat_content_interval(1.0, 0.1), 0.210354883505129, 1e-14);
    EXPECT_NEAR(cauchy_heat_content_interval(1.0, 1e-3), 0.00503423347174741, 1e-16);
    const Interval I(0.0, 1.0);
    for (double t : log_grid(1e-6, 1.0, 20)) {
        const auto q = heat_content_interval_exact(AlphaParam(1.0), I, t);
        EXPECT_EQ(q.method, EstimateMethod::SubordinationQuadrature);
        EXPECT_NEAR(q.value / cauchy_heat_content_interval(1.0, t), 1.0, 1e-9) << t;
    }
}

TEST(HeatContent1D, GaussianOracles) {
    EXPECT_NEAR(gaussian_heat_content_interval(1.0, 0.01), 0.112837916709522, 1e-14);
    EXPECT_NEAR(gaussian_heat_content_interval(1.0, 0.5), 0.631253619627493, 1e-14);
    // The remainder after 2 sqrt(s/pi) is exponentially small and non-positive.
    const double rem = gaussian_heat_content_interval_remainder(1.0, 0.05);
    EXPECT_LE(rem, 0.0);
    EXPECT_NEAR(gaussian_heat_content_interval(1.0, 0.05) - 2.0 * std::sqrt(0.05 / kPi), rem, 1e-15);
    EXPECT_NEAR(integrated_erfc(0.0), 1.0 / std::sqrt(kPi), 1e-15);
}

TEST(HeatContent1D, MonotoneAndBoundedByLength) {
    const Interval I(-0.5, 1.5);
    for (double a : {0.5, 1.0, 1.5}) {
        double prev = 0.0;
        for (double t : {1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0}) {
            const double h = heat_content_interval_exact(AlphaParam(a), I, t).value;
            EXPECT_GT(h, prev);
            EXPECT_LT(h, I.length());
            prev = h;
        }
    }
}

TEST(HeatContent1D, SuperCriticalLeadingTerm) {
    // Coefficient of t^{1/alpha} is 2 E[X_1^+] = (2/pi) Gamma(1 - 1/alpha).
    for (double a : {1.2, 1.5, 1.8}) {
        EXPECT_NEAR(positive_part_mean(AlphaParam(a)), std::tgamma(1.0 - 1.0 / a) / kPi, 1e-10);
        const auto rep = fit_expansion_1d(AlphaParam(a), Interval(0.0, 1.0));
        EXPECT_NEAR(rep.coefficients[0] / (2.0 / kPi * std::tgamma(1.0 - 1.0 / a)), 1.0, 1e-3) << a;
    }
}

TEST(HeatContent1D, RemainderSlopes) {
    const Interval I(0.0, 1.0);
    EXPECT_GE(remainder_check(AlphaParam(1.5), I, log_grid(1e-6, 1e-3, 9)).slope, 0.9);
    EXPECT_TRUE(remainder_check(AlphaParam(1.5), I, log_grid(1e-4, 1e-2, 9)).pass);
    const auto g = remainder_check(AlphaParam(2.0), I, log_grid(1e-6, 1e-3, 13));
    EXPECT_GE(g.slope, 1.4);
    EXPECT_GT(g.underflowed, 0);
}

TEST(HeatContent1D, SubCriticalRemainderOrder) {
    const Interval I(0.0, 1.0);
    for (double a : {0.4, 0.7}) {
        const auto rc = remainder_check(AlphaParam(a), I, std::vector<double>{0.01, 0.02, 0.05, 0.1});
        EXPECT_TRUE(rc.pass) << a << " slope " << rc.slope << " claimed " << rc.claimed_order;
    }
}

TEST(HeatContent1D, SubCriticalFitRecoversCoefficients) {
    const Interval I(0.0, 1.0);
    const auto rep = fit_expansion_1d(AlphaParam(0.4), I);
    ASSERT_GE(rep.coefficients.size(), 2u);
    EXPECT_EQ(rep.basis[0], "t");
    EXPECT_EQ(rep.basis[1], "t^2");
    EXPECT_NEAR(rep.coefficients[0], 1.383376, 2e-5);
    EXPECT_NEAR(rep.coefficients[1], -1.76224, 1e-3);
}

TEST(HeatContent1D, ResonantLogTerm) {
    const auto ex = expansion_terms(AlphaParam(0.5), Interval(0.0, 1.0));
    bool found = false;
    for (const auto& term : ex.terms) {
        if (term.kind != ExpansionTerm::Kind::PowerLog) continue;
        found = true;
        EXPECT_DOUBLE_EQ(term.exponent, 2.0);
        EXPECT_NEAR(term.coefficient, -2.0 / kPi, 1e-14);
    }
    EXPECT_TRUE(found);
    const auto rep = fit_expansion_1d(AlphaParam(0.5), Interval(0.0, 1.0));
    for (std::size_t j = 0; j < rep.basis.size(); ++j)
        if (rep.basis[j] == "t^2 ln(1/t)") {
            EXPECT_NEAR(rep.coefficients[j] / (-2.0 / kPi), 1.0, 0.03);
        }
}

TEST(HeatContent1D, LinearCoefficientIsTailConstantTimesPerimeter) {
    // First term: tail constant times P_alpha(0, L) = 2 L^{1-alpha} / (alpha (1 - alpha)).
    for (double a : {0.3, 0.7}) {
        const double L = 1.7;
        const auto ex = expansion_terms(AlphaParam(a), Interval(0.0, L));
        const double A = std::tgamma(1.0 + a) * std::sin(0.5 * kPi * a) / kPi;
        const double P = 2.0 * std::pow(L, 1.0 - a) / (a * (1.0 - a));
        EXPECT_NEAR(ex.terms[0].coefficient / (A * P), 1.0, 1e-12) << a;
    }
}

TEST(HeatContent1D, ExpansionRejectsLargeTime) {
    try {
        remainder_check(AlphaParam(0.4), Interval(0.0, 1.0), std::vector<double>{0.1, 0.5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RangeError);
    }
}

TEST(HeatContent1D, IntervalValidation) {
    EXPECT_THROW(Interval(1.0, 1.0), Error);
    EXPECT_THROW(heat_content_interval_exact(AlphaParam(1.0), Interval(0.0, 1.0), 0.0), Error);
}
