#pragma once

// One-sided (alpha/2)-stable subordinator S_t with E[exp(-lambda S_t)] =
// exp(-t lambda^{alpha/2}). For alpha = 2 the subordinator is the
// deterministic clock S_t = t.

#include <algorithm>
#include <cmath>
#include <span>
#include <optional>
#include <vector>

#include "heatcontent/alpha.hpp"
#include "heatcontent/errors.hpp"
#include "heatcontent/quadrature.hpp"
#include "heatcontent/random.hpp"

namespace heat {

struct DensityValue {
    double value = 0.0;
    double error = 0.0;
};

struct SubordinatorSample {
    double t = 0.0;
    double value = 0.0;
};

/// Transition density eta_t(s) of S_t. Closed form for alpha = 1, otherwise a
/// single positive integral over (0, pi) or, far in the tail, the convergent
/// power series in s^{-alpha/2}.
DensityValue subordinator_density(AlphaParam alpha, double t, double s);

/// P(S_t <= s).
double subordinator_cdf(AlphaParam alpha, double t, double s);

/// P(S_t > s), computed without cancellation in the tail.
double subordinator_survival(AlphaParam alpha, double t, double s);

/// E[S_1^beta] = Gamma(1 - 2 beta / alpha) / Gamma(1 - beta) for beta < alpha/2.
double subordinator_moment(AlphaParam alpha, double beta);

/// Same moment by quadrature of s^beta against the density, tail integrated
/// term by term from the series. Independent of the closed form above.
QuadratureResult subordinator_moment_by_quadrature(AlphaParam alpha, double beta);

/// Exact draw of S_t (Kanter's representation of the one-sided stable law).
SubordinatorSample sample_subordinator(AlphaParam alpha, double t, RandomStream& rng);

/// Draw of S_1 for index b = alpha/2 in (0, 1).
double sample_unit_subordinator(double b, RandomStream& rng);

/// Calibrated envelope eta_1(s) <= c0 * min(1, s^{-1-alpha/2}).
struct EnvelopeCalibration {
    double c0 = 0.0;
    double argmax = 0.0;
    /// Limit of eta_1(s) s^{1+alpha/2} as s -> infinity.
    double tail_limit = 0.0;
};

EnvelopeCalibration calibrate_density_envelope(AlphaParam alpha, double s_lo = 1e-3, double s_hi = 1e8,
                                               int points = 400);

struct ExpMomentBound {
    double estimate = 0.0;
    double error = 0.0;
    /// c0 * Gamma(alpha/2) * kappa^{-alpha}.
    double bound = 0.0;
    double c0 = 0.0;
};

/// E[exp(-kappa^2 / S_1)] by quadrature together with its envelope bound.
ExpMomentBound exp_moment_bound(AlphaParam alpha, double kappa);

/// E[exp(-kappa^2 / S_1)] alone; valid for alpha = 2 as well (exp(-kappa^2)).
double exp_moment(AlphaParam alpha, double kappa);

namespace detail {

/// eta_1(s) for index b in (0, 1).
DensityValue unit_density(double b, double s);

/// Convergent series for eta_1(s); used when s^{-b} is small.
double unit_density_series(double b, double s);

/// P(S_1 > s) for index b in (0, 1).
double unit_survival(double b, double s);

/// Region outside of which eta_1 is negligible (below e^{-745} relative) on the
/// left, or has tail mass below `tail_tol` on the right.
double unit_density_lower_cutoff(double b);
/// int_X^inf s^beta eta_1(s) ds from the series; needs X^{-b} small and beta < b.
double unit_moment_tail(double b, double beta, double X);
double unit_density_upper_cutoff(double b, double tail_tol);

}  // namespace detail

struct ExpectationOptions {
    QuadratureOptions quad{1e-300, 1e-11, 40000};
    /// Tail mass of S_1 left out on the right.
    double tail_tol = 1e-15;
    /// Value of f(s) as s -> infinity; when set, f_inf * P(S_1 > s_hi) is added.
    std::optional<double> tail_limit;
    /// Extra breakpoints in s (inside the cut-offs) where f changes scale.
    std::vector<double> hints;
    /// Left cut-off override, e.g. where f itself becomes negligible.
    std::optional<double> lower;
    /// Right cut-off is raised to at least this value when set.
    std::optional<double> upper;
    /// Growing tail f(s) ~ tail_limit + tail_power_coef * s^tail_power
    /// (tail_power < alpha/2), integrated analytically beyond the cut-off.
    double tail_power = 0.0;
    double tail_power_coef = 0.0;
};

/// E[f(S_1)] = int f(s) eta_1(s) ds by adaptive quadrature in log s.
template <class F>
QuadratureResult subordinator_expectation(AlphaParam alpha, F&& f, const ExpectationOptions& opts = {}) {
    if (alpha.is_gaussian()) return {f(1.0), 0.0, 1, true};
    const double b = alpha.subordinator_index();
    double lo = detail::unit_density_lower_cutoff(b);
    if (opts.lower) lo = std::max(lo, *opts.lower);
    double hi = detail::unit_density_upper_cutoff(b, opts.tail_tol);
    if (opts.upper) hi = std::max(hi, *opts.upper);
    if (!(hi > lo)) return {};

    std::vector<double> pts;
    const double y0 = std::log(lo);
    const double y1 = std::log(hi);
    const double step = 1.0;
    const int pieces = std::max(1, static_cast<int>(std::ceil((y1 - y0) / step)));
    pts.reserve(pieces + 3 + opts.hints.size());
    for (int i = 0; i <= pieces; ++i) pts.push_back(y0 + (y1 - y0) * i / pieces);
    for (double h : opts.hints) {
        if (h > lo && h < hi) pts.push_back(std::log(h));
    }
    if (lo < 1.0 && hi > 1.0) pts.push_back(0.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto g = [&](double y) {
        const double s = std::exp(y);
        const double density = detail::unit_density(b, s).value;
        if (density == 0.0) return 0.0;
        return f(s) * density * s;
    };
    QuadratureOptions q = opts.quad;
    q.max_intervals = std::max<int>(q.max_intervals, 8 * static_cast<int>(pts.size()));
    auto result = integrate(g, std::span<const double>(pts), q);
    if (opts.tail_limit) result.value += *opts.tail_limit * detail::unit_survival(b, hi);
    if (opts.tail_power_coef != 0.0)
        result.value += opts.tail_power_coef * detail::unit_moment_tail(b, opts.tail_power, hi);
    return result;
}

/// E[f(S_t)] via the scaling S_t = t^{2/alpha} S_1.
template <class F>
QuadratureResult subordinator_expectation_at(AlphaParam alpha, double t, F&& f,
                                             const ExpectationOptions& opts = {}) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    if (alpha.is_gaussian()) return {f(t), 0.0, 1, true};
    const double scale = std::pow(t, 2.0 / alpha.value());
    ExpectationOptions o = opts;
    for (double& h : o.hints) h /= scale;
    if (o.lower) *o.lower /= scale;
    if (o.upper) *o.upper /= scale;
    o.tail_power_coef *= std::pow(scale, o.tail_power);
    return subordinator_expectation(alpha, [&](double s) { return f(scale * s); }, o);
}

}  // namespace heat
