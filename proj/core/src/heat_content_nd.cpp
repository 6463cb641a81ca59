#include "heatcontent/heat_content_nd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatcontent/errors.hpp"
#include "heatcontent/heat_content_1d.hpp"
#include "heatcontent/quadrature.hpp"
#include "heatcontent/stable_kernel.hpp"
#include "heatcontent/subordinator.hpp"

namespace heat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrtPi = 0.56418958354775628695;

double perimeter_of(const Domain& omega) {
    if (omega.kind() == DomainKind::Interval) return 2.0;
    if (!omega.surface()) fail(ErrorKind::UnsupportedMethod, "surface measure of this domain is not known");
    return *omega.surface();
}

double volume_of(const Domain& omega, const McBudget& budget) {
    if (omega.volume()) return *omega.volume();
    return mc_volume(omega, budget).value;
}

// H^{(2)}(s) for a ball: |S| pi^{-d/2} int_0^{R/sqrt s} C(2 sqrt(s) v) e^{-v^2} v^{d-1} dv + |Omega| Q(d/2, R^2/s),
// with C the covariogram complement.
double gaussian_ball(int d, double R, double s) {
    const double vol = ball_volume(d) * std::pow(R, d);
    const double V = R / std::sqrt(s);
    const double rs2 = 2.0 * std::sqrt(s);
    const double top = std::min(V, 28.0);
    auto f = [&](double v) {
        return ball_covariogram_complement(d, R, rs2 * v) * std::exp(-v * v) * std::pow(v, d - 1);
    };
    std::vector<double> pts{0.0};
    for (double b : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 9.0, 14.0, 20.0})
        if (b < top) pts.push_back(b);
    pts.push_back(top);
    const auto r = integrate(f, std::span<const double>(pts), {1e-300, 1e-13, 2000});
    const double body = sphere_area(d) * std::pow(kPi, -0.5 * d) * r.value;
    return body + vol * regularized_gamma_q(0.5 * d, V * V);
}

double gaussian_box(const Domain& omega, double s) {
    const int d = omega.dim();
    double vol = 1.0, log_keep = 0.0;
    for (int i = 0; i < d; ++i) {
        const double L = omega.hi()[i] - omega.lo()[i];
        vol *= L;
        log_keep += std::log1p(-gaussian_heat_content_interval(L, s) / L);
    }
    return -vol * std::expm1(log_keep);
}

bool has_quadrature(const Domain& omega) {
    return omega.kind() == DomainKind::Interval || omega.kind() == DomainKind::Ball ||
           omega.kind() == DomainKind::Box || omega.kind() == DomainKind::Slab;
}

double gaussian_quadrature(const Domain& omega, double s) {
    switch (omega.kind()) {
        case DomainKind::Interval: return gaussian_heat_content_interval(omega.hi()[0] - omega.lo()[0], s);
        case DomainKind::Ball: return gaussian_ball(omega.dim(), omega.radius(), s);
        case DomainKind::Box:
        case DomainKind::Slab: return gaussian_box(omega, s);
        case DomainKind::Smooth: break;
    }
    fail(ErrorKind::UnsupportedMethod, "no quadrature route for this domain");
}

// Scales where H^{(2)} changes regime: the squared side lengths / radius.
std::vector<double> scale_hints(const Domain& omega) {
    std::vector<double> h;
    for (int i = 0; i < omega.dim(); ++i) {
        const double L = omega.hi()[i] - omega.lo()[i];
        for (double f : {0.01, 0.25, 1.0, 4.0, 100.0}) h.push_back(f * L * L);
    }
    return h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    require(a > 0.0 && 2.0 * a == std::round(2.0 * a), ErrorKind::DomainError, "a must be a positive half-integer");
    if (x <= 0.0) return 1.0;
    // Q(a+1, x) = Q(a, x) + x^a e^{-x} / Gamma(a+1)
    double q, start;
    if (std::round(2.0 * a) == 2.0 * std::floor(a)) {
        q = std::exp(-x);
        start = 1.0;
    } else {
        q = std::erfc(std::sqrt(x));
        start = 0.5;
    }
    for (double b = start; b < a - 0.25; b += 1.0) q += std::exp(b * std::log(x) - x - std::lgamma(b + 1.0));
    return std::min(q, 1.0);
}

HeatContentEstimate gaussian_heat_content(const Domain& omega, double s, const McBudget& budget) {
    require(s > 0.0, ErrorKind::DomainError, "time must be positive");
    HeatContentEstimate e;
    e.t = s;
    if (has_quadrature(omega)) {
        e.value = gaussian_quadrature(omega, s);
        e.error = 1e-12 * e.value;
        e.method = EstimateMethod::SubordinationQuadrature;
        if (omega.kind() != DomainKind::Ball) e.method = EstimateMethod::ClosedForm;
        return e;
    }
    const int d = omega.dim();
    const double vol = volume_of(omega, budget);
    const double sd = std::sqrt(2.0 * s);
    auto m = run_budgeted(budget, vol, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums acc;
        Point x{};
        for (std::uint64_t k = 0; k < n; ++k) {
            omega.sample_uniform(rng, std::span<double>(x.data(), d));
            for (int i = 0; i < d; ++i) x[i] += sd * rng.normal();
            acc.add(omega.contains(std::span<const double>(x.data(), d)) ? 0.0 : 1.0);
        }
        return acc;
    });
    e.value = vol * m.mean;
    e.error = vol * m.std_err;
    e.method = EstimateMethod::DirectMC;
    e.samples = m.n;
    e.seed = budget.seed;
    return e;
}

HeatContentEstimate heat_content_nd(AlphaParam alpha, const Domain& omega, double t, EstimateMethod method,
                                    const McBudget& budget) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    if (method == EstimateMethod::SubordinationQuadrature) {
        if (!has_quadrature(omega))
            fail(ErrorKind::UnsupportedMethod, "subordination quadrature needs an interval, ball or box");
        if (alpha.is_gaussian()) {
            auto e = gaussian_heat_content(omega, t, budget);
            e.method = EstimateMethod::SubordinationQuadrature;
            return e;
        }
        if (omega.kind() == DomainKind::Interval)
            return heat_content_interval_exact(alpha, Interval(omega.lo()[0], omega.hi()[0]), t);
        ExpectationOptions opts;
        opts.quad.rel_tol = 1e-11;
        opts.tail_limit = *omega.volume();
        opts.hints = scale_hints(omega);
        auto r = subordinator_expectation_at(alpha, t, [&](double s) { return gaussian_quadrature(omega, s); }, opts);
        HeatContentEstimate e;
        e.value = r.value;
        e.error = r.error + 1e-12 * std::abs(r.value);
        e.t = t;
        e.method = EstimateMethod::SubordinationQuadrature;
        return e;
    }
    if (method != EstimateMethod::DirectMC) fail(ErrorKind::UnsupportedMethod, "heat_content_nd: unknown method");

    const int d = omega.dim();
    const double vol = volume_of(omega, budget);
    auto m = run_budgeted(budget, vol, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums acc;
        Point x{}, z{};
        for (std::uint64_t k = 0; k < n; ++k) {
            omega.sample_uniform(rng, std::span<double>(x.data(), d));
            sample_stable_increment(alpha, t, rng, std::span<double>(z.data(), d));
            for (int i = 0; i < d; ++i) x[i] += z[i];
            acc.add(omega.contains(std::span<const double>(x.data(), d)) ? 0.0 : 1.0);
        }
        return acc;
    });
    HeatContentEstimate e;
    e.value = vol * m.mean;
    e.error = vol * m.std_err;
    e.t = t;
    e.method = EstimateMethod::DirectMC;
    e.samples = m.n;
    e.seed = budget.seed;
    return e;
}

IntegrandBoundCheck subordination_integrand_check(AlphaParam alpha, const Domain& omega, double t, int points) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    require(has_quadrature(omega), ErrorKind::UnsupportedMethod, "integrand check needs a quadrature domain");
    const double per = perimeter_of(omega);
    const double a = alpha.value();
    const double scale = std::pow(t, 2.0 / a);
    IntegrandBoundCheck out;
    for (int i = 0; i < points; ++i) {
        const double s = std::pow(10.0, -3.0 + 9.0 * i / std::max(1, points - 1));
        const double eta = alpha.is_gaussian() ? 1.0 : subordinator_density(alpha, 1.0, s).value;
        if (!(eta > 0.0)) continue;
        const double G = std::pow(t, -1.0 / a) * gaussian_quadrature(omega, scale * s) * eta;
        const double bound = kInvSqrtPi * per * std::sqrt(s) * eta;
        if (G < 0.0) out.negative = true;
        const double ratio = G / bound;
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.worst_s = s;
        }
        ++out.points;
    }
    return out;
}

double cauchy_slab_content(double delta, double eps, double t, double window_area) {
    require(delta > 0.0 && eps > 0.0 && t > 0.0 && window_area > 0.0, ErrorKind::DomainError,
            "slab content needs positive delta, eps, t and window");
    // G(w) = w atan w - ln(1 + w^2)/2, the antiderivative of atan.
    auto G = [](double w) { return w * std::atan(w) - 0.5 * std::log1p(w * w); };
    const double v = G((delta + eps) / t) - G(eps / t) - G(delta / t);
    return window_area * t * v / kPi;
}

HeatContentEstimate slab_content_mc(AlphaParam alpha, const Domain& slab, double t, const McBudget& budget) {
    require(slab.kind() == DomainKind::Slab, ErrorKind::DomainError, "slab_content_mc needs a slab domain");
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    const int d = slab.dim();
    const double eps = slab.slab_eps();
    const double vol = *slab.volume();
    auto m = run_budgeted(budget, vol, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums acc;
        Point x{}, z{};
        for (std::uint64_t k = 0; k < n; ++k) {
            slab.sample_uniform(rng, std::span<double>(x.data(), d));
            sample_stable_increment(alpha, t, rng, std::span<double>(z.data(), d));
            const double yd = x[d - 1] + z[d - 1];
            acc.add(yd > -eps && yd < 0.0 ? 1.0 : 0.0);
        }
        return acc;
    });
    HeatContentEstimate e;
    e.value = vol * m.mean;
    e.error = vol * m.std_err;
    e.t = t;
    e.method = EstimateMethod::DirectMC;
    e.samples = m.n;
    e.seed = budget.seed;
    return e;
}

TubeDecomposition tube_decomposition(AlphaParam alpha, const Domain& omega, double t, double eps, double delta,
                                     const McBudget& budget) {
    require(t > 0.0 && eps > 0.0 && delta > 0.0, ErrorKind::DomainError, "needs positive t, eps and delta");
    const int d = omega.dim();
    const double vol = volume_of(omega, budget);
    struct Sums {
        BatchSums part[5];
    };
    auto parts = run_indexed<Sums>(budget.batch_count(), budget.threads, [&](std::size_t b) {
        RandomStream rng = RandomStream::for_batch(budget.seed, b);
        Sums s;
        Point x{}, z{};
        const auto n = budget.batch_samples(b);
        for (std::uint64_t k = 0; k < n; ++k) {
            omega.sample_uniform(rng, std::span<double>(x.data(), d));
            const bool tube = omega.in_inner_tube(std::span<const double>(x.data(), d), eps);
            sample_stable_increment(alpha, t, rng, std::span<double>(z.data(), d));
            for (int i = 0; i < d; ++i) x[i] += z[i];
            const std::span<const double> y(x.data(), d);
            const bool out = !omega.contains(y);
            const bool collar = out && omega.in_outer_tube(y, delta);
            const double v0 = out, v1 = !tube && out, v2 = tube && collar, v3 = tube && out && !collar;
            s.part[0].add(v0);
            s.part[1].add(v1);
            s.part[2].add(v2);
            s.part[3].add(v3);
            s.part[4].add(v0 - v1 - v2 - v3);
        }
        return s;
    });
    Sums total;
    for (const auto& p : parts)
        for (int i = 0; i < 5; ++i) total.part[i].merge(p.part[i]);
    auto est = [&](int i) {
        const McMean m = finish(total.part[i]);
        HeatContentEstimate e;
        e.value = vol * m.mean;
        e.error = vol * m.std_err;
        e.t = t;
        e.method = EstimateMethod::DirectMC;
        e.samples = m.n;
        e.seed = budget.seed;
        return e;
    };
    TubeDecomposition r;
    r.total = est(0);
    r.core_to_exterior = est(1);
    r.tube_to_collar = est(2);
    r.tube_to_far = est(3);
    const auto res = est(4);
    r.residual = res.value;
    r.residual_error = res.error;
    return r;
}

double superc_bound(AlphaParam alpha, const Domain& omega, double t) {
    require(alpha.value() > 1.0, ErrorKind::UnsupportedRegime, "bound holds for 1 < alpha <= 2");
    const double a = alpha.value();
    return std::tgamma(1.0 - 1.0 / a) / kPi * perimeter_of(omega) * std::pow(t, 1.0 / a);
}

std::string_view to_string(AsymptoticLaw law) noexcept {
    switch (law) {
        case AsymptoticLaw::TPowInvAlpha: return "t_pow_inv_alpha";
        case AsymptoticLaw::TLog: return "t_log";
        case AsymptoticLaw::LinearT: return "linear_t";
    }
    return "unknown";
}

double predicted_coefficient(AlphaParam alpha, const Domain& omega, AsymptoticLaw law) {
    const double a = alpha.value();
    switch (law) {
        case AsymptoticLaw::TPowInvAlpha:
            require(a > 1.0, ErrorKind::UnsupportedRegime, "t^{1/alpha} law needs 1 < alpha <= 2");
            return std::tgamma(1.0 - 1.0 / a) / kPi * perimeter_of(omega);
        case AsymptoticLaw::TLog:
            require(alpha.is_cauchy(), ErrorKind::UnsupportedRegime, "t ln(1/t) law needs alpha = 1");
            return perimeter_of(omega) / kPi;
        case AsymptoticLaw::LinearT: {
            require(a < 1.0, ErrorKind::UnsupportedRegime, "linear law needs 0 < alpha < 1");
            const auto method = omega.kind() == DomainKind::Smooth ? PerimeterMethod::MonteCarlo
                                                                    : PerimeterMethod::Quadrature;
            const auto p = fractional_perimeter(omega, a, method);
            return tail_constant(alpha, omega.dim()).value * p.value;
        }
    }
    return 0.0;
}

ExpansionReport asymptote_fit(AlphaParam alpha, const Domain& omega, std::span<const double> t_grid,
                              AsymptoticLaw law, EstimateMethod method, const McBudget& budget) {
    for (double t : t_grid) {
        require(t > 0.0, ErrorKind::DomainError, "t grid must be positive");
        if (!(t < 0.1)) fail(ErrorKind::GridTooNarrow, "small-time fits need every t < 0.1");
    }
    if (t_grid.size() >= 2) {
        const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
        if (std::log10(*hi / *lo) < 1.5 - 1e-12) fail(ErrorKind::GridTooNarrow, "t grid must span 1.5 decades");
    }
    const double a = alpha.value();
    std::vector<BasisFunction> basis;
    switch (law) {
        case AsymptoticLaw::TPowInvAlpha:
            basis = {BasisFunction::power(1.0 / a), BasisFunction::power(1.0)};
            break;
        case AsymptoticLaw::TLog:
            basis = {BasisFunction::power_log(1.0), BasisFunction::power(1.0)};
            break;
        case AsymptoticLaw::LinearT:
            basis = {BasisFunction::power(1.0)};
            if (const int N = alpha.reciprocal_integer(); N > 0)
                basis.push_back(BasisFunction::power_log(N));
            else
                basis.push_back(BasisFunction::power(1.0 / a));
            break;
    }
    if (method == EstimateMethod::SubordinationQuadrature && !has_quadrature(omega)) method = EstimateMethod::DirectMC;
    std::vector<DataPoint> data;
    for (double t : t_grid) {
        const auto e = heat_content_nd(alpha, omega, t, method, budget);
        data.push_back({t, e.value, e.error});
    }
    return fit_leading(data, basis, predicted_coefficient(alpha, omega, law), std::string(to_string(law)));
}

RunRecord make_record(AlphaParam alpha, const Domain& omega, const HeatContentEstimate& e) {
    RunRecord r;
    r.alpha = alpha.value();
    r.domain = omega.id();
    r.t = e.t;
    r.method = std::string(to_string(e.method));
    r.value = e.value;
    r.err = e.error;
    r.seed = e.samples > 0 ? e.seed : 0;
    return r;
}

}  // namespace heat
