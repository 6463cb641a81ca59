#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "heatcontent/asymptotics.hpp"
#include "heatcontent/errors.hpp"
#include "heatcontent/heat_content_1d.hpp"

using namespace heat;

namespace {
std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

template <class F>
std::vector<DataPoint> sample(F f, double lo, double hi, int n) {
    std::vector<DataPoint> d;
    for (double t : log_grid(lo, hi, n)) d.push_back({t, f(t), 0.0});
    return d;
}
}  // namespace

TEST(Asymptotics, BasisLabels) {
    EXPECT_EQ(BasisFunction::power(1.0).label(), "t");
    EXPECT_EQ(BasisFunction::power(0.5).label(), "t^0.5");
    EXPECT_EQ(BasisFunction::power_log(2.0).label(), "t^2 ln(1/t)");
    EXPECT_EQ(BasisFunction::power_log(1.0).label(), "t ln(1/t)");
    EXPECT_NEAR(BasisFunction::power_log(1.0).eval(0.01), 0.01 * std::log(100.0), 1e-15);
}

TEST(Asymptotics, RecoversExactPowerSum) {
    const auto data = sample([](double t) { return 3.0 * std::sqrt(t) + 0.1 * t; }, 1e-6, 1e-3, 12);
    const std::vector<BasisFunction> basis{BasisFunction::power(0.5), BasisFunction::power(1.0)};
    const auto rep = fit_leading(data, basis, 3.0, "synthetic");
    EXPECT_NEAR(rep.coefficients[0], 3.0, 1e-10);
    EXPECT_NEAR(rep.coefficients[1], 0.1, 1e-6);
    EXPECT_TRUE(rep.within(1e-9));
    EXPECT_LT(rep.condition_number, kMaxConditionNumber);
}

TEST(Asymptotics, RecoversLogTerm) {
    const auto data = sample([](double t) { return 2.0 * t * std::log(1.0 / t) + t; }, 1e-5, 1e-2, 13);
    const std::vector<BasisFunction> basis{BasisFunction::power_log(1.0), BasisFunction::power(1.0)};
    const auto rep = fit_leading(data, basis, 2.0);
    EXPECT_NEAR(rep.fitted_coefficient, 2.0, 1e-10);
    EXPECT_NEAR(rep.coefficients[1], 1.0, 1e-9);
}

TEST(Asymptotics, ExactCauchyIntervalData) {
    // H(t) = (2/pi) t ln(1/t) + (2/pi)(1 + ln L) t + O(t^3) for the unit interval.
    std::vector<DataPoint> data;
    for (double t : log_grid(1e-5, 1e-2, 13)) data.push_back({t, cauchy_heat_content_interval(1.0, t), 0.0});
    const std::vector<BasisFunction> basis{BasisFunction::power_log(1.0), BasisFunction::power(1.0),
                                           BasisFunction::power(3.0)};
    const auto rep = fit_leading(data, basis, 2.0 / std::numbers::pi);
    EXPECT_NEAR(rep.fitted_coefficient, 2.0 / std::numbers::pi, 1e-9);
    EXPECT_NEAR(rep.coefficients[1], 2.0 / std::numbers::pi, 1e-8);
}

TEST(Asymptotics, ConfidenceIntervalsUnderNoise) {
    std::mt19937_64 gen(123);
    std::normal_distribution<double> noise(0.0, 1.0);
    int covered = 0;
    const int trials = 40;
    for (int k = 0; k < trials; ++k) {
        std::vector<DataPoint> data;
        for (double t : log_grid(1e-6, 1e-3, 15)) {
            const double v = 3.0 * std::sqrt(t) + 0.1 * t;
            data.push_back({t, v * (1.0 + 0.01 * noise(gen)), 0.01 * v});
        }
        const std::vector<BasisFunction> basis{BasisFunction::power(0.5), BasisFunction::power(1.0)};
        const auto rep = fit_leading(data, basis, 3.0);
        EXPECT_LT(std::abs(rep.fitted_coefficient - 3.0), 3.0 * rep.fitted_ci);
        if (std::abs(rep.fitted_coefficient - 3.0) <= rep.fitted_ci) ++covered;
    }
    // Nominal 95% coverage; allow for the small trial count.
    EXPECT_GE(covered, 32);
}

TEST(Asymptotics, StudentQuantileMatchesBoost) {
    // Noise-free data with known weights: half-width / std_err is the t quantile on n - p dof.
    std::vector<DataPoint> data;
    std::mt19937_64 gen(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (double t : log_grid(1e-4, 1e-1, 9)) data.push_back({t, t * (2.0 + 0.01 * noise(gen)), 0.01 * t});
    const std::vector<BasisFunction> basis{BasisFunction::power(1.0), BasisFunction::power(2.0)};
    const auto rep = fit_leading(data, basis);
    const boost::math::students_t dist(7.0);
    EXPECT_NEAR(rep.ci[0] / rep.std_errors[0], boost::math::quantile(dist, 0.975), 1e-10);
}

TEST(Asymptotics, IllConditioned) {
    const auto data = sample([](double t) { return t; }, 1e-4, 1e-1, 10);
    const std::vector<BasisFunction> basis{BasisFunction::power(1.0), BasisFunction::power(1.0 + 1e-9)};
    try {
        fit_leading(data, basis);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IllConditioned);
    }
}

TEST(Asymptotics, GridTooNarrow) {
    const std::vector<BasisFunction> basis{BasisFunction::power(1.0)};
    for (const auto& data : {sample([](double t) { return t; }, 1e-3, 1e-2, 10),
                             sample([](double t) { return t; }, 1e-5, 1e-2, 5)}) {
        try {
            fit_leading(data, basis);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::GridTooNarrow);
        }
    }
}

TEST(Asymptotics, LogLogSlope) {
    const auto x = log_grid(1e-3, 1.0, 7);
    std::vector<double> y;
    for (double t : x) y.push_back(-4.0 * std::pow(t, 1.5));
    EXPECT_NEAR(loglog_slope(x, y), 1.5, 1e-12);
}

TEST(Asymptotics, JsonReport) {
    const auto data = sample([](double t) { return 3.0 * std::sqrt(t) + 0.1 * t; }, 1e-6, 1e-3, 12);
    const std::vector<BasisFunction> basis{BasisFunction::power(0.5), BasisFunction::power(1.0)};
    const auto json = to_json(fit_leading(data, basis, 3.0, "synthetic"));
    EXPECT_NE(json.find("\"law\":\"synthetic\""), std::string::npos);
    EXPECT_NE(json.find("t^0.5"), std::string::npos);
}
