#include "heatcontent/spectral_heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatcontent/errors.hpp"
#include "heatcontent/heat_content_nd.hpp"
#include "heatcontent/quadrature.hpp"
#include "heatcontent/stable_kernel.hpp"
#include "heatcontent/subordinator.hpp"

namespace heat {
namespace {

constexpr double kPi = std::numbers::pi;

double domain_volume(const Domain& omega, const McBudget& budget) {
    if (omega.volume()) return *omega.volume();
    return mc_volume(omega, budget).value;
}

bool analytic_tubes(const Domain& omega) {
    return omega.kind() != DomainKind::Smooth || omega.id().rfind("rounded_box", 0) == 0;
}

// Per-path accumulators for several statistics at once, reduced in batch order.
template <class Job>
std::vector<McMean> run_multi(const McBudget& budget, std::size_t count, Job&& job) {
    auto parts = run_indexed<std::vector<BatchSums>>(budget.batch_count(), budget.threads, [&](std::size_t b) {
        RandomStream rng = RandomStream::for_batch(budget.seed, b);
        std::vector<BatchSums> s(count);
        job(rng, budget.batch_samples(b), s);
        return s;
    });
    std::vector<BatchSums> total(count);
    for (const auto& p : parts)
        for (std::size_t i = 0; i < count; ++i) total[i].merge(p[i]);
    std::vector<McMean> out;
    for (const auto& s : total) out.push_back(finish(s));
    return out;
}

}  // namespace

HeatContentEstimate SpectralEstimate::as_estimate() const {
    HeatContentEstimate e;
    e.value = q_extrapolated;
    e.error = extrapolated_err;
    e.t = t;
    e.method = EstimateMethod::KilledPathMC;
    e.samples = samples;
    e.seed = seed;
    return e;
}

SpectralEstimate spectral_heat_content(AlphaParam alpha, const Domain& omega, double t, const KilledPathConfig& cfg,
                                       const McBudget& budget) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    require(cfg.n_steps >= 1 && cfg.refinement_levels >= 1 && cfg.refinement_levels <= 12, ErrorKind::DomainError,
            "killed-path grid needs n_steps >= 1 and 1..12 refinement levels");
    const int levels = cfg.refinement_levels;
    const int finest = cfg.n_steps << (levels - 1);
    const double dt = t / finest;
    const int d = omega.dim();
    const double vol = domain_volume(omega, budget);

    SpectralEstimate out;
    out.t = t;
    out.volume = vol;
    const double gain = 1.0 / (std::pow(2.0, out.rate) - 1.0);

    auto job = [&](RandomStream& rng, std::uint64_t n, std::vector<BatchSums>& acc) {
        Point x{}, z{};
        std::vector<char> alive(levels);
        for (std::uint64_t p = 0; p < n; ++p) {
            omega.sample_uniform(rng, std::span<double>(x.data(), d));
            std::fill(alive.begin(), alive.end(), 1);
            int n_alive = levels;
            for (int k = 1; k <= finest && n_alive > 0; ++k) {
                sample_stable_increment(alpha, dt, rng, std::span<double>(z.data(), d));
                for (int i = 0; i < d; ++i) x[i] += z[i];
                if (omega.contains(std::span<const double>(x.data(), d))) continue;
                for (int l = levels - 1; l >= 0; --l) {
                    const int stride = 1 << (levels - 1 - l);
                    if (k % stride != 0) break;  // coarser levels have larger strides
                    if (alive[l]) {
                        alive[l] = 0;
                        --n_alive;
                    }
                }
            }
            for (int l = 0; l < levels; ++l) acc[l].add(alive[l]);
            const double fine = alive[levels - 1];
            const double coarse = levels > 1 ? alive[levels - 2] : fine;
            acc[levels].add(fine + (fine - coarse) * gain);
        }
    };

    std::vector<McMean> m;
    if (budget.target_error > 0.0) {
        McBudget pilot = budget;
        pilot.samples = std::min(budget.samples, budget.batch_size);
        const auto pm = run_multi(pilot, levels + 1, job);
        const double sd = pm[levels].std_err * std::sqrt(static_cast<double>(pm[levels].n)) * vol;
        if (sd * sd / (budget.target_error * budget.target_error) > static_cast<double>(budget.samples))
            fail(ErrorKind::BudgetTooSmall, "killed-path budget cannot reach the target error");
    }
    m = run_multi(budget, levels + 1, job);
    for (int l = 0; l < levels; ++l) {
        SpectralLevel lv;
        lv.n_steps = cfg.n_steps << l;
        lv.q = vol * m[l].mean;
        lv.q_err = vol * m[l].std_err;
        lv.deficit = vol - lv.q;
        lv.deficit_err = lv.q_err;
        out.levels.push_back(lv);
    }
    out.q_extrapolated = vol * m[levels].mean;
    out.deficit_extrapolated = vol - out.q_extrapolated;
    out.extrapolated_err = vol * m[levels].std_err;
    if (budget.target_error > 0.0 && out.extrapolated_err > budget.target_error)
        fail(ErrorKind::BudgetTooSmall, "killed-path standard error above target after the full budget");
    out.samples = m[levels].n;
    out.seed = budget.seed;
    return out;
}

SpectralCurve spectral_heat_curve(AlphaParam alpha, const Domain& omega, double t_max, int n_steps,
                                  const McBudget& budget) {
    require(t_max > 0.0 && n_steps >= 1, ErrorKind::DomainError, "needs t_max > 0 and n_steps >= 1");
    const int d = omega.dim();
    const double dt = t_max / n_steps;
    const double vol = domain_volume(omega, budget);
    auto m = run_multi(budget, n_steps, [&](RandomStream& rng, std::uint64_t n, std::vector<BatchSums>& acc) {
        Point x{}, z{};
        for (std::uint64_t p = 0; p < n; ++p) {
            omega.sample_uniform(rng, std::span<double>(x.data(), d));
            bool alive = true;
            for (int k = 0; k < n_steps; ++k) {
                if (alive) {
                    sample_stable_increment(alpha, dt, rng, std::span<double>(z.data(), d));
                    for (int i = 0; i < d; ++i) x[i] += z[i];
                    alive = omega.contains(std::span<const double>(x.data(), d));
                }
                acc[k].add(alive ? 1.0 : 0.0);
            }
        }
    });
    SpectralCurve c;
    for (int k = 0; k < n_steps; ++k) {
        c.t.push_back(dt * (k + 1));
        c.q.push_back(vol * m[k].mean);
        c.q_err.push_back(vol * m[k].std_err);
    }
    return c;
}

SandwichBounds sandwich_bounds(AlphaParam alpha, const Domain& omega, double t, int layers, const McBudget& budget) {
    require(t > 0.0, ErrorKind::DomainError, "time must be positive");
    require(layers >= 2, ErrorKind::DomainError, "needs at least two co-area layers");
    const int d = omega.dim();
    const double a = alpha.value();
    SandwichBounds out;
    out.layers = layers;

    const bool quad = omega.kind() != DomainKind::Smooth;
    const auto H = heat_content_nd(alpha, omega, t, quad ? EstimateMethod::SubordinationQuadrature
                                                         : EstimateMethod::DirectMC, budget);
    out.lower = H.value;
    out.lower_err = H.error;

    // Co-area: int_Omega f(rho) = int_0^{r_in} f(r) A(r) dr on log-spaced layers.
    const double r_in = omega.inradius();
    std::vector<double> edges{0.0};
    for (int k = 0; k < layers; ++k) edges.push_back(r_in * std::pow(10.0, -8.0 * (layers - 1 - k) / (layers - 1)));
    edges.back() = r_in;
    std::vector<double> layer_area;
    if (!analytic_tubes(omega)) {
        McBudget b = budget;
        b.samples = std::max<std::uint64_t>(budget.samples / layers, 1u << 14);
        for (int k = 0; k < layers; ++k) {
            const double mid = 0.5 * (edges[k] + edges[k + 1]);
            layer_area.push_back(surface_measure_tube(omega, std::min(mid, 0.999 * omega.reach()), b).value);
        }
    }
    const bool analytic = layer_area.empty();
    auto area = [&](double r) { return surface_measure_tube(omega, std::min(r, r_in * (1.0 - 1e-12))).value; };

    // F(sigma) = int_Omega exp(-rho^2 / (8 sigma)).
    auto F = [&](double sigma) {
        const double c = 8.0 * sigma;
        const double w = std::sqrt(c);
        if (analytic) {
            std::vector<double> pts = edges;
            for (double f : {0.5, 1.0, 2.0, 4.0, 8.0})
                if (f * w < r_in) pts.push_back(f * w);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            auto g = [&](double r) { return std::exp(-r * r / c) * area(r); };
            return integrate(g, std::span<const double>(pts), {1e-300, 1e-11, 4000}).value;
        }
        double s = 0.0;
        for (int k = 0; k < layers; ++k)
            s += layer_area[k] * 0.5 * std::sqrt(kPi * c) * (std::erf(edges[k + 1] / w) - std::erf(edges[k] / w));
        return s;
    };

    const double pre = std::pow(2.0, 0.5 * (d + 2));
    const double scale = std::pow(t, 2.0 / a);
    if (alpha.is_gaussian()) {
        out.upper = pre * F(t);
    } else {
        ExpectationOptions opts;
        opts.quad.rel_tol = 1e-9;
        double vol = 0.0;
        if (analytic) {
            vol = domain_volume(omega, budget);
        } else {
            for (int k = 0; k < layers; ++k) vol += layer_area[k] * (edges[k + 1] - edges[k]);
        }
        opts.tail_limit = vol;
        for (double f : {1e-4, 1e-2, 1.0, 1e2}) opts.hints.push_back(f * r_in * r_in / scale);
        const auto r = subordinator_expectation(alpha, [&](double s) { return F(scale * s); }, opts);
        out.upper = pre * r.value;
        out.upper_err = pre * r.error + 1e-9 * out.upper;
    }
    if (a < 1.0) {
        const auto mb = exp_moment_bound(alpha, 1.0);
        const double inv = inverse_distance_integral(omega, a, budget).value;
        out.moment_upper = std::pow(2.0, 0.5 * (d + 2 + 3 * a)) * mb.c0 * std::tgamma(0.5 * a) * t * inv;
    } else {
        out.moment_upper = std::numeric_limits<double>::infinity();
    }
    return out;
}

SandwichReport sandwich_check(AlphaParam alpha, const Domain& omega, double t, const KilledPathConfig& cfg,
                              const McBudget& budget, double sigmas) {
    SandwichReport r;
    r.sigmas = sigmas;
    r.bounds = sandwich_bounds(alpha, omega, t, 64, budget);
    r.estimate = spectral_heat_content(alpha, omega, t, cfg, budget);
    const double def = r.estimate.deficit_extrapolated;
    const double err = std::hypot(r.estimate.extrapolated_err, r.bounds.lower_err);
    r.lower_ok = r.bounds.lower <= def + sigmas * err;
    r.upper_ok = def <= r.bounds.upper + sigmas * std::hypot(r.estimate.extrapolated_err, r.bounds.upper_err);
    return r;
}

bool SubordinationExitCheck::pass(double sigmas) const {
    return p_stable <= p_brownian + sigmas * std::hypot(p_stable_err, p_brownian_err);
}

SubordinationExitCheck subordination_exit_check(AlphaParam alpha, const Domain& omega, std::span<const double> x,
                                                double t, int n_steps, int substeps, const McBudget& budget) {
    require(t > 0.0 && n_steps >= 1 && substeps >= 1, ErrorKind::DomainError, "needs t > 0, n_steps, substeps >= 1");
    require(omega.contains(x), ErrorKind::DomainError, "start point must lie inside the domain");
    const int d = omega.dim();
    const double dt = t / n_steps;
    auto m = run_multi(budget, 2, [&](RandomStream& rng, std::uint64_t n, std::vector<BatchSums>& acc) {
        Point y{};
        for (std::uint64_t p = 0; p < n; ++p) {
            for (int i = 0; i < d; ++i) y[i] = x[i];
            bool stable_out = false, brownian_out = false;
            for (int k = 0; k < n_steps && !stable_out; ++k) {
                // One subordinator increment per step drives both paths.
                const double ds = sample_subordinator(alpha, dt, rng).value;
                const double sd = std::sqrt(2.0 * ds / substeps);
                for (int j = 0; j < substeps; ++j) {
                    for (int i = 0; i < d; ++i) y[i] += sd * rng.normal();
                    if (!omega.contains(std::span<const double>(y.data(), d))) brownian_out = true;
                }
                if (!omega.contains(std::span<const double>(y.data(), d))) stable_out = true;
            }
            acc[0].add(stable_out);
            acc[1].add(brownian_out);
        }
    });
    SubordinationExitCheck c;
    c.p_stable = m[0].mean;
    c.p_stable_err = m[0].std_err;
    c.p_brownian = m[1].mean;
    c.p_brownian_err = m[1].std_err;
    c.samples = m[0].n;
    return c;
}

ExteriorVolumeCheck exterior_volume_check(const Domain& omega, double alpha, int points, std::uint64_t seed) {
    require(alpha > 0.0 && alpha < 2.0, ErrorKind::AlphaOutOfRange, "needs 0 < alpha < 2");
    const int d = omega.dim();
    ExteriorVolumeCheck c;
    c.constant = 0.5 * ball_volume(d);
    const double k = c.constant / std::pow(2.0, d + alpha);
    RandomStream rng(seed);
    Point x{};
    c.min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        omega.sample_uniform(rng, std::span<double>(x.data(), d));
        const std::span<const double> xs(x.data(), d);
        const double ext = exterior_integral(omega, xs, alpha);
        const double low = k * std::pow(omega.sdf(xs), -alpha);
        c.min_ratio = std::min(c.min_ratio, ext / low);
        ++c.points;
    }
    if (alpha < 1.0) {
        const auto method =
            omega.kind() == DomainKind::Smooth ? PerimeterMethod::MonteCarlo : PerimeterMethod::Quadrature;
        c.perimeter = fractional_perimeter(omega, alpha, method).value;
        c.integrated_lower = k * inverse_distance_integral(omega, alpha).value;
    } else {
        c.perimeter = c.integrated_lower = std::numeric_limits<double>::infinity();
    }
    return c;
}

}  // namespace heat
