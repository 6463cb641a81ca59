#include "heatcontent/heat_content_1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatcontent/errors.hpp"
#include "heatcontent/quadrature.hpp"
#include "heatcontent/stable_kernel.hpp"
#include "heatcontent/subordinator.hpp"

namespace heat {
namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);

// a_n(alpha) = (-1)^{n-1} Gamma(n alpha + 1) / (pi n!) sin(pi n alpha / 2).
double series_coefficient(double alpha, int n) {
    const double sign = n % 2 == 1 ? 1.0 : -1.0;
    return sign * std::exp(std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0)) / kPi * std::sin(0.5 * kPi * n * alpha);
}

bool resonant(double alpha, int n) { return std::abs(n * alpha - 1.0) < 1e-12; }

double validity_limit(double alpha, double L) { return std::min(std::pow(L, alpha), std::exp(-1.0)); }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::string_view to_string(EstimateMethod method) noexcept {
    switch (method) {
        case EstimateMethod::ClosedForm: return "closed-form";
        case EstimateMethod::SubordinationQuadrature: return "subordination-quadrature";
        case EstimateMethod::DirectMC: return "direct-mc";
        case EstimateMethod::CauchySlabClosedForm: return "cauchy-slab-closed-form";
        case EstimateMethod::KilledPathMC: return "killed-path-mc";
    }
    return "unknown";
}

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, ErrorKind::DomainError,
            "interval needs finite a < b");
}

double integrated_erfc(double x) {
    if (x < 2.0) return std::exp(-x * x) * kInvSqrtPi - x * std::erfc(x);
    // ierfc / erfc = 1 / (2x + 4 / (2x + 6 / (2x + ...))), evaluated backwards.
    double r = 0.0;
    for (int n = 200; n >= 1; --n) r = 1.0 / (2.0 * x + 2.0 * (n + 1) * r);
    return std::erfc(x) * r;
}

double gaussian_heat_content_interval(double L, double s) {
    if (s <= 0.0) return 0.0;
    const double rs = std::sqrt(s);
    const double x = 0.5 * L / rs;
    if (x < 2.0) return 2.0 * rs * (x * std::erfc(x) - std::expm1(-x * x) * kInvSqrtPi);
    return 2.0 * rs * (kInvSqrtPi - integrated_erfc(x));
}

double gaussian_heat_content_interval_remainder(double L, double s) {
    if (s <= 0.0) return 0.0;
    const double rs = std::sqrt(s);
    return -2.0 * rs * integrated_erfc(0.5 * L / rs);
}

HeatContentEstimate heat_content_interval_exact(AlphaParam alpha, const Interval& omega, double t, double rel_tol) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    const double L = omega.length();
    if (alpha.is_gaussian()) return {gaussian_heat_content_interval(L, t), 0.0, t, EstimateMethod::ClosedForm};
    ExpectationOptions opts;
    opts.quad.rel_tol = rel_tol;
    opts.tail_limit = L;
    opts.hints = {L * L, 0.01 * L * L, 100.0 * L * L};
    auto r = subordinator_expectation_at(alpha, t, [L](double s) { return gaussian_heat_content_interval(L, s); },
                                         opts);
    return {r.value, r.error, t, EstimateMethod::SubordinationQuadrature};
}

HeatContentEstimate heat_content_interval_remainder(AlphaParam alpha, const Interval& omega, double t,
                                                    double rel_tol) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    require(alpha.value() > 1.0, ErrorKind::UnsupportedRegime, "t^{1/alpha} remainder needs alpha > 1");
    const double L = omega.length();
    if (alpha.is_gaussian())
        return {gaussian_heat_content_interval_remainder(L, t), 0.0, t, EstimateMethod::ClosedForm};
    // Beyond the cut-off r(s) = L - 2 sqrt(s/pi) + O(s^{-1/2}); push the cut-off
    // far enough that the O(s^{-1/2}) part is negligible and add the rest exactly.
    ExpectationOptions opts;
    opts.quad.rel_tol = rel_tol;
    opts.tail_limit = L;
    opts.tail_power = 0.5;
    opts.tail_power_coef = -2.0 * kInvSqrtPi;
    opts.upper = 1e16 * L * L;
    opts.hints = {L * L, 0.01 * L * L, 100.0 * L * L};
    auto r = subordinator_expectation_at(
        alpha, t, [L](double s) { return gaussian_heat_content_interval_remainder(L, s); }, opts);
    return {r.value, r.error, t, EstimateMethod::SubordinationQuadrature};
}

double cauchy_heat_content_interval(double L, double t) {
    require(t > 0.0 && L > 0.0, ErrorKind::DomainError, "need t > 0 and L > 0");
    return 2.0 / kPi * (t * std::log(1.0 / t) + L * std::atan(t / L) + 0.5 * t * std::log(t * t + L * L));
}

double integrated_tail(AlphaParam alpha, double W, double rel_tol) {
    // int_0^W P(X_1 >= w) dw = E[H^{(2)}_W(S_1)] / 2.
    require(W > 0.0, ErrorKind::DomainError, "upper limit must be positive");
    if (alpha.is_gaussian()) return 0.5 * gaussian_heat_content_interval(W, 1.0);
    ExpectationOptions opts;
    opts.quad.rel_tol = rel_tol;
    opts.tail_limit = 0.5 * W;
    opts.hints = {W * W, 0.01 * W * W, 100.0 * W * W};
    return subordinator_expectation(alpha, [W](double s) { return 0.5 * gaussian_heat_content_interval(W, s); }, opts)
        .value;
}

double positive_part_mean(AlphaParam alpha) {
    require(alpha.value() > 1.0, ErrorKind::MomentDiverges, "E[X_1; X_1 >= 0] needs alpha > 1");
    const double a = alpha.value();
    const double X = alpha.is_gaussian() ? 40.0 : 1e5;
    KernelOptions kopts;
    kopts.rel_tol = 1e-12;
    auto core = integrate_log([&](double x) { return x * kernel_eval(alpha, 1, 1.0, x, kopts).value; }, 1e-9, X,
                              {0.0, 1e-11, 4000}, 1.0);
    double tail = 0.0;
    // Asymptotic tail p_1(x) ~ a_1 x^{-1-a} + a_2 x^{-1-2a} + ...
    for (int n = 1; n <= 3 && !alpha.is_gaussian(); ++n)
        tail += series_coefficient(a, n) * std::pow(X, 1.0 - n * a) / (n * a - 1.0);
    return core.value + tail;
}

double ExpansionTerm::basis(double t) const {
    const double p = std::pow(t, exponent);
    return kind == Kind::Power ? p : p * std::log(1.0 / t);
}

double Expansion1D::evaluate(double t) const {
    double v = 0.0;
    for (const auto& term : terms) v += term.coefficient * term.basis(t);
    return v;
}

double sato_heat_sum(double alpha, double L, double t, int first, int last) {
    double sum = 0.0;
    const double log_l = std::log(L);
    const double log_t = std::log(t);
    const int stop = last < 0 ? 5000 : last;
    for (int n = std::max(first, 1); n <= stop; ++n) {
        if (resonant(alpha, n)) continue;
        const double denom = n * alpha * (1.0 - n * alpha);
        const double term = series_coefficient(alpha, n) * std::exp((1.0 - n * alpha) * log_l + n * log_t) / denom;
        sum += term;
        if (last < 0 && n > first + 2) {
            const double bound = std::exp(std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0) +
                                          (1.0 - n * alpha) * log_l + n * log_t) /
                                 std::abs(denom);
            if (bound < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
        }
    }
    return sum;
}

Expansion1D expansion_terms(AlphaParam alpha, const Interval& omega) {
    Expansion1D e;
    e.alpha = alpha;
    const double L = omega.length();
    e.length = L;
    const double a = alpha.value();
    using Kind = ExpansionTerm::Kind;
    if (alpha.is_gaussian()) {
        e.terms.push_back({Kind::Power, 0.5, 2.0 * kInvSqrtPi, "t^(1/2)"});
        e.remainder_order = 1.5;
        e.remainder_label = "t^(3/2)";
        e.t_max = std::numeric_limits<double>::infinity();
        return e;
    }
    if (a > 1.0) {
        e.terms.push_back({Kind::Power, 1.0 / a, 2.0 / kPi * std::tgamma(1.0 - 1.0 / a), "t^(1/alpha)"});
        e.remainder_order = 1.0;
        e.remainder_label = "t";
        e.t_max = std::numeric_limits<double>::infinity();
        return e;
    }
    if (alpha.is_cauchy()) {
        // The closed formula, Taylor expanded: the first omitted term is t^3/(3 pi L^2).
        e.terms.push_back({Kind::PowerLog, 1.0, 2.0 / kPi, "t ln(1/t)"});
        e.terms.push_back({Kind::Power, 1.0, 2.0 / kPi * (1.0 + std::log(L)), "t"});
        e.remainder_order = 3.0;
        e.remainder_label = "t^3";
        e.t_max = std::numeric_limits<double>::infinity();
        return e;
    }
    e.t_max = validity_limit(a, L);
    const double head = integrated_tail(alpha, 1.0);
    const int N = alpha.reciprocal_integer();
    auto power_term = [&](int n) {
        return ExpansionTerm{Kind::Power, static_cast<double>(n),
                             2.0 * series_coefficient(a, n) * std::pow(L, 1.0 - n * a) / (n * a * (1.0 - n * a)),
                             "t^" + std::to_string(n)};
    };
    if (N > 0) {
        for (int n = 1; n < N; ++n) e.terms.push_back(power_term(n));
        const double aN = series_coefficient(a, N);
        e.terms.push_back({Kind::PowerLog, static_cast<double>(N), 2.0 * N * aN, "t^" + std::to_string(N) + " ln(1/t)"});
        const double c_star = aN * std::log(L) - sato_heat_sum(a, 1.0, 1.0, 1, N - 1) - sato_heat_sum(a, 1.0, 1.0, N + 1, -1);
        e.terms.push_back({Kind::Power, static_cast<double>(N), 2.0 * (head + c_star), "C_N t^" + std::to_string(N)});
        e.remainder_order = N + 1.0;
        e.remainder_label = "t^" + std::to_string(N + 1);
        return e;
    }
    const int m = static_cast<int>(std::floor(1.0 / a));
    for (int n = 1; n <= m; ++n) e.terms.push_back(power_term(n));
    const double c_alpha = 2.0 * (head - sato_heat_sum(a, 1.0, 1.0, 1, -1));
    e.terms.push_back({Kind::Power, 1.0 / a, c_alpha, "C_alpha t^(1/alpha)"});
    e.remainder_order = m + 1.0;
    e.remainder_label = "t^" + std::to_string(m + 1);
    return e;
}

RemainderReport remainder_check(AlphaParam alpha, const Interval& omega, std::span<const double> t_grid,
                                double slack) {
    require(t_grid.size() >= 2, ErrorKind::DomainError, "remainder fit needs at least two times");
    const double L = omega.length();
    const double a = alpha.value();
    if (a < 1.0) {
        const double limit = validity_limit(a, L);
        for (double t : t_grid)
            if (!(t > 0.0 && t < limit))
                fail(ErrorKind::RangeError, "t outside (0, min{|Omega|^alpha, 1/e}) for the sub-critical expansion");
    }
    const auto e = expansion_terms(alpha, omega);
    RemainderReport rep;
    rep.claimed_order = e.remainder_order;
    std::vector<double> lx, ly;
    for (double t : t_grid) {
        const double prefix = e.evaluate(t);
        double exact, rem;
        if (a > 1.0) {
            rem = heat_content_interval_remainder(alpha, omega, t).value;
            exact = prefix + rem;
        } else {
            exact = heat_content_interval_exact(alpha, omega, t).value;
            rem = exact - prefix;
        }
        rep.t.push_back(t);
        rep.exact.push_back(exact);
        rep.prefix.push_back(prefix);
        rep.remainder.push_back(rem);
        if (rem == 0.0) {
            ++rep.underflowed;
            continue;
        }
        lx.push_back(std::log(t));
        ly.push_back(std::log(std::abs(rem)));
    }
    rep.slope = lx.size() >= 2 ? fit_slope(lx, ly) : std::numeric_limits<double>::infinity();
    rep.pass = rep.slope >= rep.claimed_order - slack;
    return rep;
}

ExpansionReport fit_expansion_1d(AlphaParam alpha, const Interval& omega, double t_lo, double t_hi, int points) {
    const double a = alpha.value();
    if (!(t_lo > 0.0 && t_hi > t_lo)) {
        if (a > 1.0) {
            t_lo = 1e-6;
            t_hi = 1e-3;
        } else if (alpha.is_cauchy()) {
            t_lo = 1e-5;
            t_hi = 1e-2;
        } else {
            t_lo = 1e-3;
            t_hi = 0.1;
        }
    }
    std::vector<BasisFunction> basis;
    if (a > 1.0) {
        basis = {BasisFunction::power(1.0 / a), BasisFunction::power(1.0)};
    } else if (alpha.is_cauchy()) {
        basis = {BasisFunction::power_log(1.0), BasisFunction::power(1.0)};
    } else {
        const int top = static_cast<int>(std::floor(1.0 / a + 1e-12));
        for (int n = 1; n <= top; ++n) {
            if (n == alpha.reciprocal_integer()) basis.push_back(BasisFunction::power_log(n));
            basis.push_back(BasisFunction::power(n));
        }
        if (alpha.reciprocal_integer() == 0) basis.push_back(BasisFunction::power(1.0 / a));
        basis.push_back(BasisFunction::power(top + 1));
        if (alpha.reciprocal_integer() == 0) basis.push_back(BasisFunction::power(top + 2));
    }
    std::vector<DataPoint> data;
    for (int i = 0; i < points; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (points - 1));
        const auto e = heat_content_interval_exact(alpha, omega, t);
        data.push_back({t, e.value, e.error});
    }
    const auto ex = expansion_terms(alpha, omega);
    return fit_leading(data, basis, ex.terms.front().coefficient, "interval");
}

}  // namespace heat
