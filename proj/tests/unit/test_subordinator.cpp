#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "heatcontent/errors.hpp"
#include "heatcontent/subordinator.hpp"

using namespace heat;

TEST(Subordinator, CauchyClosedFormMatchesLevyDensity) {
    // S_t for alpha = 1 is Levy with scale t^2/2.
    EXPECT_NEAR(subordinator_density(AlphaParam(1.0), 1.0, 1.0).value, 0.219695644733861, 1e-14);
    for (double t : {0.3, 1.0, 2.5}) {
        for (double s : {0.01, 0.4, 3.0, 50.0}) {
            const double cdf = subordinator_cdf(AlphaParam(1.0), t, s);
            EXPECT_NEAR(cdf, boost::math::erfc(t / (2.0 * std::sqrt(s))), 1e-12) << t << " " << s;
        }
    }
}

TEST(Subordinator, GeneralIndexAgreesWithCauchyFormula) {
    // The alpha = 1 closed form bypasses the integral route; check them against each other.
    for (double s : {0.05, 0.5, 2.0, 30.0, 1e4}) {
        const DensityValue v = detail::unit_density(0.5, s);
        const double levy = 0.5 / std::sqrt(std::numbers::pi) * std::pow(s, -1.5) * std::exp(-0.25 / s);
        EXPECT_NEAR(v.value / levy, 1.0, 1e-9) << s;
    }
}

TEST(Subordinator, DensityNormalised) {
    for (double a : {0.3, 0.8, 1.2, 1.7, 1.95}) {
        const auto mass = subordinator_expectation(AlphaParam(a), [](double) { return 1.0; });
        EXPECT_NEAR(mass.value, 1.0, 1e-9) << a;
    }
}

TEST(Subordinator, Scaling) {
    const AlphaParam a(1.3);
    for (double t : {0.01, 0.5, 4.0}) {
        const double c = std::pow(t, 2.0 / a.value());
        for (double s : {0.1, 1.0, 9.0}) {
            EXPECT_NEAR(subordinator_density(a, t, c * s).value * c / subordinator_density(a, 1.0, s).value, 1.0,
                        1e-10);
        }
    }
}

TEST(Subordinator, LaplaceTransform) {
    const auto lt = subordinator_expectation(AlphaParam(1.5), [](double s) { return std::exp(-2.0 * s); });
    EXPECT_NEAR(lt.value, 0.186040138435915, 1e-10);
    for (double a : {0.4, 1.0, 1.8}) {
        for (double lam : {0.5, 1.0, 2.0, 5.0}) {
            const auto v = subordinator_expectation(AlphaParam(a), [&](double s) { return std::exp(-lam * s); });
            EXPECT_NEAR(v.value, std::exp(-std::pow(lam, 0.5 * a)), 1e-9) << a << " " << lam;
        }
    }
}

TEST(Subordinator, MomentClosedFormAndQuadrature) {
    EXPECT_NEAR(subordinator_moment(AlphaParam(1.5), 0.5), 1.51142921624680, 1e-12);
    for (double a : {0.6, 1.0, 1.5}) {
        for (double beta : {-1.0, -0.3, 0.1, 0.25}) {
            if (beta >= 0.5 * a) continue;
            const double closed = boost::math::tgamma(1.0 - 2.0 * beta / a) / boost::math::tgamma(1.0 - beta);
            EXPECT_NEAR(subordinator_moment(AlphaParam(a), beta) / closed, 1.0, 1e-13);
            EXPECT_NEAR(subordinator_moment_by_quadrature(AlphaParam(a), beta).value / closed, 1.0, 1e-8)
                << a << " " << beta;
        }
    }
}

TEST(Subordinator, MomentDivergesBeyondHalfAlpha) {
    try {
        subordinator_moment(AlphaParam(1.0), 0.5);
        FAIL() << "expected MomentDiverges";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MomentDiverges);
    }
}

TEST(Subordinator, SurvivalComplementsCdf) {
    const AlphaParam a(0.9);
    for (double s : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(subordinator_cdf(a, 1.0, s) + subordinator_survival(a, 1.0, s), 1.0, 1e-10);
    }
    // Far tail: P(S_1 > s) ~ s^{-b} / Gamma(1 - b).
    const double s = 1e12;
    EXPECT_NEAR(subordinator_survival(a, 1.0, s) * std::pow(s, 0.45) * std::tgamma(0.55), 1.0, 1e-4);
}

TEST(Subordinator, SamplerKolmogorovSmirnov) {
    for (double a : {0.5, 1.0, 1.6}) {
        RandomStream rng(42);
        std::vector<double> xs(100000);
        for (double& x : xs) x = sample_subordinator(AlphaParam(a), 1.0, rng).value;
        std::sort(xs.begin(), xs.end());
        const double n = static_cast<double>(xs.size());
        double ks = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double F = subordinator_cdf(AlphaParam(a), 1.0, xs[i]);
            ks = std::max({ks, std::abs(F - i / n), std::abs((i + 1) / n - F)});
        }
        EXPECT_LT(ks, 0.01) << a;
    }
}

TEST(Subordinator, GaussianClockIsDeterministic) {
    RandomStream rng(1);
    EXPECT_EQ(sample_subordinator(AlphaParam(2.0), 0.7, rng).value, 0.7);
    EXPECT_NEAR(exp_moment(AlphaParam(2.0), 1.5), std::exp(-2.25), 1e-15);
}

TEST(Subordinator, ExpMomentAgainstClosedFormAndEnvelope) {
    // alpha = 1: 1/S_1 is Gamma(1/2, rate 1/4), so the moment is (1 + 4 k^2)^{-1/2}.
    EXPECT_NEAR(exp_moment(AlphaParam(1.0), 1.0), 1.0 / std::sqrt(5.0), 1e-10);
    for (double a : {0.5, 1.2}) {
        const auto b = exp_moment_bound(AlphaParam(a), 0.8);
        EXPECT_GT(b.estimate, 0.0);
        EXPECT_LE(b.estimate, b.bound);
    }
}

TEST(Subordinator, EnvelopeCalibration) {
    const auto cal = calibrate_density_envelope(AlphaParam(1.0));
    // eta_1(s) s^{3/2} -> 1/(2 sqrt pi) for alpha = 1.
    EXPECT_NEAR(cal.tail_limit, 0.5 / std::sqrt(std::numbers::pi), 1e-8);
    for (double s : {0.05, 0.3, 1.0, 10.0, 1e4})
        EXPECT_LE(subordinator_density(AlphaParam(1.0), 1.0, s).value, cal.c0 * std::min(1.0, std::pow(s, -1.5)) * (1 + 1e-12));
}

TEST(Subordinator, RejectsBadArguments) {
    EXPECT_THROW(AlphaParam(0.0), Error);
    EXPECT_THROW(AlphaParam(2.5), Error);
    EXPECT_THROW(subordinator_density(AlphaParam(1.0), -1.0, 1.0), Error);
}
