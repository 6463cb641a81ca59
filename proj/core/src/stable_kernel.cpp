#include "heatcontent/stable_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatcontent/errors.hpp"
#include "heatcontent/subordinator.hpp"

namespace heat {
namespace {

constexpr double kPi = std::numbers::pi;
// exp(-kGaussCut) = 1e-18: Gaussian factor treated as zero beyond this.
constexpr double kGaussCut = 41.45;

double cauchy_constant(int d) { return std::tgamma(0.5 * (d + 1)) / std::pow(kPi, 0.5 * (d + 1)); }

// p_1(rho) by subordination: E[(4 pi S_1)^{-d/2} exp(-rho^2 / (4 S_1))].
QuadratureResult unit_kernel_quadrature(AlphaParam alpha, int d, double rho, double rel_tol) {
    const double r2 = rho * rho;
    const double half_d = 0.5 * d;
    ExpectationOptions opts;
    opts.quad.rel_tol = rel_tol;
    opts.tail_limit = 0.0;
    if (rho > 0.0) {
        opts.hints = {0.25 * r2};
        opts.lower = 0.25 * r2 / kGaussCut;
        opts.upper = 1e6 * r2;
    }
    auto f = [=](double s) { return std::pow(4.0 * kPi * s, -half_d) * std::exp(-0.25 * r2 / s); };
    return subordinator_expectation(alpha, f, opts);
}

}  // namespace

std::string_view to_string(KernelMethod method) noexcept {
    switch (method) {
        case KernelMethod::ClosedFormGaussian: return "closed-form-gaussian";
        case KernelMethod::ClosedFormCauchy: return "closed-form-cauchy";
        case KernelMethod::SatoSeries: return "sato-series";
        case KernelMethod::SubordinationQuadrature: return "subordination-quadrature";
    }
    return "unknown";
}

double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

double ball_volume(int d) { return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

KernelValue kernel_eval(AlphaParam alpha, int d, double t, double r, const KernelOptions& opts) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    require(r >= 0.0, ErrorKind::DomainError, "radius must be non-negative");
    require(d >= 1, ErrorKind::DomainError, "dimension must be at least 1");
    const double a = alpha.value();
    if (alpha.is_gaussian()) {
        const double x = r * r / (4.0 * t);
        const double v = std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-x);
        // Underflow for huge r^2/t is reported as an absolute error of DBL_MIN.
        const double err = v == 0.0 ? std::numeric_limits<double>::min() : 4e-16 * v;
        return {v, KernelMethod::ClosedFormGaussian, err};
    }
    if (alpha.is_cauchy()) {
        const double v = cauchy_constant(d) * t / std::pow(t * t + r * r, 0.5 * (d + 1));
        return {v, KernelMethod::ClosedFormCauchy, 4e-16 * v};
    }
    const double scale = std::pow(t, -1.0 / a);
    const double rho = r * scale;
    const double jac = std::pow(scale, d);
    if (d == 1 && a < 1.0 && rho >= opts.series_from && rho > 1.0) {
        const auto s = sato_series(a, rho, opts.series_tol);
        return {jac * s.value, KernelMethod::SatoSeries, jac * (s.remainder + 1e-15 * std::abs(s.value))};
    }
    const auto q = unit_kernel_quadrature(alpha, d, rho, opts.rel_tol);
    return {jac * q.value, KernelMethod::SubordinationQuadrature, jac * q.error};
}

TailConstant tail_constant(AlphaParam alpha, int d) {
    require(d >= 1, ErrorKind::DomainError, "dimension must be at least 1");
    const double a = alpha.value();
    const double v = a * std::pow(2.0, a - 1.0) * std::pow(kPi, -1.0 - 0.5 * d) * std::sin(0.5 * kPi * a) *
                     std::tgamma(0.5 * (d + a)) * std::tgamma(0.5 * a);
    return {a, d, alpha.is_gaussian() ? 0.0 : v};
}

double kernel_tail_limit(AlphaParam alpha, int d, double r) {
    if (alpha.is_gaussian()) fail(ErrorKind::UnsupportedRegime, "small-time tail limit needs alpha < 2");
    require(r > 0.0, ErrorKind::DomainError, "radius must be positive");
    return tail_constant(alpha, d).value / std::pow(r, d + alpha.value());
}

TailLimitCheck kernel_tail_limit_check(AlphaParam alpha, int d, double r, std::span<const double> ts) {
    static constexpr double kDefault[] = {1e-2, 1e-3, 1e-4};
    if (ts.empty()) ts = kDefault;
    TailLimitCheck out;
    out.limit = kernel_tail_limit(alpha, d, r);
    out.monotone = true;
    for (double t : ts) {
        const double ratio = kernel_eval(alpha, d, t, r).value / t;
        const double err = std::abs(ratio - out.limit) / out.limit;
        if (!out.rel_error.empty() && err > out.rel_error.back()) out.monotone = false;
        out.t.push_back(t);
        out.ratio.push_back(ratio);
        out.rel_error.push_back(err);
    }
    return out;
}

SatoCoefficients sato_coefficients(double alpha, int n_max) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::DomainError, "series needs 0 < alpha < 1");
    SatoCoefficients c{alpha, {}};
    c.a.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        c.a.push_back(sign * sato_coefficient_bound(alpha, n) / kPi * std::sin(0.5 * kPi * n * alpha));
    }
    return c;
}

double sato_coefficient_bound(double alpha, int n) { return std::exp(std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0)); }

SatoSum sato_series(double alpha, double z, double tol) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::DomainError, "series needs 0 < alpha < 1");
    if (!(z > 1.0)) fail(ErrorKind::RangeError, "series is not used for z <= 1");
    const double log_z = std::log(z);
    auto bound = [&](int n) { return std::exp(std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0) - (1.0 + n * alpha) * log_z); };
    SatoSum out;
    const double cut = tol * bound(1);
    int n = 1;
    for (; n < 2000; ++n) {
        const double b = bound(n);
        if (b < cut) break;
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        out.value += sign * b / kPi * std::sin(0.5 * kPi * n * alpha);
        out.terms = n;
    }
    // Omitted tail: the bounds decay faster than geometrically once they drop.
    for (int m = n; m < n + 4000; ++m) {
        const double b = bound(m);
        out.remainder += b;
        if (b < 1e-6 * out.remainder || b == 0.0) break;
    }
    return out;
}

void sample_stable_increment(AlphaParam alpha, double t, RandomStream& rng, std::span<double> out) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    const double s = sample_subordinator(alpha, t, rng).value;
    const double sd = std::sqrt(2.0 * s);
    for (double& x : out) x = sd * rng.normal();
}

std::vector<double> sample_stable_increment(AlphaParam alpha, int d, double t, RandomStream& rng) {
    require(d >= 1, ErrorKind::DomainError, "dimension must be at least 1");
    std::vector<double> x(d);
    sample_stable_increment(alpha, t, rng, x);
    return x;
}

EnvelopeBand calibrate_kernel_envelope(AlphaParam alpha, int d, std::span<const double> ts,
                                       std::span<const double> rs) {
    require(!alpha.is_gaussian(), ErrorKind::UnsupportedRegime, "two-sided envelope needs alpha < 2");
    EnvelopeBand band{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    const double a = alpha.value();
    for (double t : ts) {
        for (double r : rs) {
            const double p = kernel_eval(alpha, d, t, r).value;
            double env = std::pow(t, -d / a);
            if (r > 0.0) env = std::min(env, t * std::pow(r, -d - a));
            const double ratio = p / env;
            band.min_ratio = std::min(band.min_ratio, ratio);
            band.max_ratio = std::max(band.max_ratio, ratio);
        }
    }
    band.c = std::max(band.max_ratio, 1.0 / band.min_ratio);
    return band;
}

QuadratureResult kernel_mass(AlphaParam alpha, int d, double t, double rel_tol) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    const double a = alpha.value();
    const double area = sphere_area(d);
    // Radial integral in rho = r t^{-1/alpha}, evaluating the kernel at time t itself.
    const double len = std::pow(t, 1.0 / a);
    const double rho_lo = 1e-6;
    const double rho_hi = alpha.is_gaussian() ? 60.0 : std::pow(10.0, std::min(12.0, 8.0 / a));
    KernelOptions kopts;
    kopts.rel_tol = std::min(1e-9, 0.01 * rel_tol);
    auto f = [&](double rho) {
        const double r = rho * len;
        return area * std::pow(r, d - 1) * len * kernel_eval(alpha, d, t, r, kopts).value;
    };
    auto r = integrate_log(f, rho_lo, rho_hi, {0.0, rel_tol, 4000}, 2.0);
    // Core below rho_lo, where the density is flat.
    r.value += kernel_eval(alpha, d, t, 0.0, kopts).value * ball_volume(d) * std::pow(rho_lo * len, d);
    if (!alpha.is_gaussian()) r.value += area * tail_constant(alpha, d).value * std::pow(rho_hi, -a) / a;
    return r;
}

}  // namespace heat
