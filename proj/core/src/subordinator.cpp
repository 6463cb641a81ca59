#include "heatcontent/subordinator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace heat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnderflowExponent = 745.0;
// Series in s^{-b} is used once s^{-b} drops below this.
constexpr double kSeriesThreshold = 0.25;

// log a(u) with u = pi - v, where
//   a(u) = (sin(bu)/sin(u))^{1/(1-b)} * sin((1-b)u) / sin(bu)
// is the Zolotarev function of the one-sided stable law. Working in v keeps
// the blow-up at u -> pi resolved to full relative precision.
double log_zolotarev(double b, double v) {
    const double u = kPi - v;
    const double su = v < 0.5 * kPi ? std::sin(v) : std::sin(u);
    const double bu = b * u;
    const double sbu = bu < 0.5 * kPi ? std::sin(bu) : std::sin((1.0 - b) * kPi + b * v);
    const double s1bu = std::sin((1.0 - b) * u);
    return (std::log(sbu) - std::log(su)) / (1.0 - b) + std::log(s1bu) - std::log(sbu);
}

double log_a_at_zero(double b) { return std::log1p(-b) + b / (1.0 - b) * std::log(b); }

// Breakpoints in v for integrands peaked where q(v) = a * x^{-b/(1-b)} is 1.
std::vector<double> zolotarev_breakpoints(double b, double log_x) {
    const double shift = b / (1.0 - b) * log_x;
    const double log_q0 = log_a_at_zero(b) - shift;
    std::vector<double> pts = {0.0, kPi};
    if (log_q0 >= 0.0) {
        // q >= 1 everywhere: integrand concentrated near v = pi with width ~ q0^{-1/2}.
        const double w = std::min(0.5 * kPi, 1.0 / std::sqrt(std::exp(std::min(log_q0, 700.0))));
        for (double f : {0.25, 1.0, 4.0, 16.0}) {
            const double p = kPi - f * w;
            if (p > 0.0 && p < kPi) pts.push_back(p);
        }
        pts.push_back(0.5 * kPi);
    } else {
        // q decreases from +inf to q0 < 1; locate q = 1 by bisection in v.
        double lo = 0.0;
        double hi = kPi;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= 0.0) break;
            if (log_zolotarev(b, mid) - shift > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double vs = 0.5 * (lo + hi);
        for (double f : {0.125, 0.5, 1.0, 2.0, 8.0}) {
            const double p = f * vs;
            if (p > 0.0 && p < kPi) pts.push_back(p);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <class G>
QuadratureResult zolotarev_integral(double b, double x, G&& g) {
    const double log_x = std::log(x);
    const double shift = b / (1.0 - b) * log_x;
    const auto pts = zolotarev_breakpoints(b, log_x);
    auto integrand = [&](double v) {
        if (v <= 0.0 || v >= kPi) return 0.0;
        const double log_q = log_zolotarev(b, v) - shift;
        return g(std::exp(std::min(log_q, 700.0)));
    };
    QuadratureOptions opts{0.0, 1e-13, 2000};
    return integrate(integrand, std::span<const double>(pts), opts);
}

double check_index(AlphaParam alpha) {
    if (alpha.is_gaussian()) fail(ErrorKind::UnsupportedRegime, "alpha = 2 subordinator is deterministic (S_t = t)");
    return alpha.subordinator_index();
}

// Series coefficient magnitudes: log(Gamma(n b + shift) / n!).
double log_coef(double b, int n, double shift) { return std::lgamma(n * b + shift) - std::lgamma(n + 1.0); }

}  // namespace

namespace detail {

double unit_density_series(double b, double s) {
    const double log_s = std::log(s);
    double sum = 0.0;
    for (int n = 1; n < 400; ++n) {
        const double sn = std::sin(n * kPi * b);
        const double mag = std::exp(log_coef(b, n, 1.0) - (n * b + 1.0) * log_s);
        const double term = (n % 2 == 1 ? 1.0 : -1.0) * mag * sn;
        sum += term;
        if (n > 2 && mag < 1e-17 * std::abs(sum)) break;
    }
    return sum / kPi;
}

DensityValue unit_density(double b, double s) {
    if (!(s > 0.0)) return {};
    if (b == 0.5) {
        const double v = 0.5 / std::sqrt(kPi) * std::pow(s, -1.5) * std::exp(-0.25 / s);
        return {v, 4e-16 * v};
    }
    if (std::pow(s, -b) <= kSeriesThreshold) {
        const double v = unit_density_series(b, s);
        return {v, 1e-15 * std::abs(v)};
    }
    const double log_q0 = log_a_at_zero(b) - b / (1.0 - b) * std::log(s);
    if (log_q0 > std::log(kUnderflowExponent)) return {0.0, 0.0};
    auto r = zolotarev_integral(b, s, [](double q) { return q * std::exp(-q); });
    const double pref = b / ((1.0 - b) * kPi * s);
    return {pref * r.value, pref * r.error};
}

double unit_survival(double b, double s) {
    if (!(s > 0.0)) return 1.0;
    if (b == 0.5) return std::erf(0.5 / std::sqrt(s));
    if (std::pow(s, -b) <= kSeriesThreshold) {
        const double log_s = std::log(s);
        double sum = 0.0;
        for (int n = 1; n < 400; ++n) {
            const double mag = std::exp(log_coef(b, n, 0.0) - n * b * log_s);
            sum += (n % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(n * kPi * b);
            if (n > 2 && mag < 1e-17 * std::abs(sum)) break;
        }
        return sum / kPi;
    }
    const double log_q0 = log_a_at_zero(b) - b / (1.0 - b) * std::log(s);
    if (log_q0 > std::log(kUnderflowExponent)) return 1.0;
    auto r = zolotarev_integral(b, s, [](double q) { return -std::expm1(-q); });
    return std::clamp(r.value / kPi, 0.0, 1.0);
}

double unit_density_lower_cutoff(double b) {
    return std::exp((1.0 - b) / b * (log_a_at_zero(b) - std::log(kUnderflowExponent)));
}

double unit_density_upper_cutoff(double b, double tail_tol) {
    const double log_hi = -std::log(tail_tol * std::tgamma(1.0 - b)) / b;
    return std::exp(std::min(log_hi, 690.0));
}

double unit_moment_tail(double b, double beta, double X) {
    const double log_x = std::log(X);
    double tail = 0.0;
    for (int n = 1; n < 400; ++n) {
        const double mag = std::exp(log_coef(b, n, 1.0) + (beta - n * b) * log_x) / (n * b - beta);
        tail += (n % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(n * kPi * b);
        if (n > 2 && mag < 1e-17 * std::abs(tail)) break;
    }
    return tail / kPi;
}

}  // namespace detail

DensityValue subordinator_density(AlphaParam alpha, double t, double s) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    require(s > 0.0, ErrorKind::DomainError, "density argument must be positive");
    const double b = check_index(alpha);
    if (alpha.is_cauchy()) {
        const double v = t / (2.0 * std::sqrt(kPi)) * std::pow(s, -1.5) * std::exp(-t * t / (4.0 * s));
        return {v, 4e-16 * v};
    }
    const double scale = std::pow(t, -1.0 / b);
    auto d = detail::unit_density(b, s * scale);
    return {scale * d.value, scale * d.error};
}

double subordinator_survival(AlphaParam alpha, double t, double s) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    if (alpha.is_gaussian()) return s < t ? 1.0 : 0.0;
    if (s <= 0.0) return 1.0;
    const double b = alpha.subordinator_index();
    return detail::unit_survival(b, s * std::pow(t, -1.0 / b));
}

double subordinator_cdf(AlphaParam alpha, double t, double s) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    if (alpha.is_gaussian()) return s >= t ? 1.0 : 0.0;
    if (s <= 0.0) return 0.0;
    const double b = alpha.subordinator_index();
    const double x = s * std::pow(t, -1.0 / b);
    const double sf = detail::unit_survival(b, x);
    if (sf < 0.5) return 1.0 - sf;
    if (b == 0.5) return std::erfc(0.5 / std::sqrt(x));
    const double log_q0 = log_a_at_zero(b) - b / (1.0 - b) * std::log(x);
    if (log_q0 > std::log(kUnderflowExponent)) return 0.0;
    auto r = zolotarev_integral(b, x, [](double q) { return std::exp(-q); });
    return std::clamp(r.value / kPi, 0.0, 1.0);
}

double subordinator_moment(AlphaParam alpha, double beta) {
    if (!(beta < 0.5 * alpha.value()))
        fail(ErrorKind::MomentDiverges, "E[S_1^beta] is infinite for beta >= alpha/2");
    if (alpha.is_gaussian() || beta == 0.0) return 1.0;
    return std::tgamma(1.0 - 2.0 * beta / alpha.value()) / std::tgamma(1.0 - beta);
}

QuadratureResult subordinator_moment_by_quadrature(AlphaParam alpha, double beta) {
    if (!(beta < 0.5 * alpha.value()))
        fail(ErrorKind::MomentDiverges, "E[S_1^beta] is infinite for beta >= alpha/2");
    if (alpha.is_gaussian()) return {1.0, 0.0, 1, true};
    const double b = alpha.subordinator_index();
    const double lo = detail::unit_density_lower_cutoff(b);
    const double split = 4.0 * std::pow(kSeriesThreshold, -1.0 / b);
    auto r = integrate_log([&](double s) { return std::pow(s, beta) * detail::unit_density(b, s).value; }, lo,
                           split, {0.0, 1e-13, 20000}, 1.0);
    // Tail: the density series integrated term by term from `split` on.
    r.value += detail::unit_moment_tail(b, beta, split);
    return r;
}

double sample_unit_subordinator(double b, RandomStream& rng) {
    const double v = kPi * rng.uniform();
    const double e = rng.exponential();
    return std::exp((1.0 - b) / b * (log_zolotarev(b, v) - std::log(e)));
}

SubordinatorSample sample_subordinator(AlphaParam alpha, double t, RandomStream& rng) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    if (alpha.is_gaussian()) return {t, t};
    const double b = alpha.subordinator_index();
    return {t, std::pow(t, 1.0 / b) * sample_unit_subordinator(b, rng)};
}

EnvelopeCalibration calibrate_density_envelope(AlphaParam alpha, double s_lo, double s_hi, int points) {
    const double b = check_index(alpha);
    require(s_lo > 0.0 && s_hi > s_lo && points >= 2, ErrorKind::DomainError, "bad calibration grid");
    EnvelopeCalibration cal;
    cal.tail_limit = std::tgamma(1.0 + b) * std::sin(kPi * b) / kPi;
    const double step = std::log(s_hi / s_lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double s = s_lo * std::exp(step * i);
        const double ratio = detail::unit_density(b, s).value / std::min(1.0, std::pow(s, -1.0 - b));
        if (ratio > cal.c0) {
            cal.c0 = ratio;
            cal.argmax = s;
        }
    }
    if (cal.tail_limit > cal.c0) {
        cal.c0 = cal.tail_limit;
        cal.argmax = std::numeric_limits<double>::infinity();
    }
    return cal;
}

double exp_moment(AlphaParam alpha, double kappa) {
    require(kappa > 0.0, ErrorKind::DomainError, "kappa must be positive");
    const double k2 = kappa * kappa;
    if (alpha.is_gaussian()) return std::exp(-k2);
    ExpectationOptions opts;
    opts.tail_limit = 1.0;
    opts.lower = k2 / kUnderflowExponent;
    opts.hints = {k2};
    return subordinator_expectation(alpha, [k2](double s) { return std::exp(-k2 / s); }, opts).value;
}

ExpMomentBound exp_moment_bound(AlphaParam alpha, double kappa) {
    require(kappa > 0.0, ErrorKind::DomainError, "kappa must be positive");
    const double b = check_index(alpha);
    const double k2 = kappa * kappa;
    ExpectationOptions opts;
    opts.tail_limit = 1.0;
    opts.lower = k2 / kUnderflowExponent;
    opts.hints = {k2};
    auto r = subordinator_expectation(alpha, [k2](double s) { return std::exp(-k2 / s); }, opts);
    ExpMomentBound out;
    out.estimate = r.value;
    out.error = r.error;
    out.c0 = calibrate_density_envelope(alpha).c0;
    out.bound = out.c0 * std::tgamma(b) * std::pow(kappa, -alpha.value());
    return out;
}

}  // namespace heat
