#pragma once

// Heat content H(t) = int_Omega P^x(X_t not in Omega) dx in R^d.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatcontent/alpha.hpp"
#include "heatcontent/asymptotics.hpp"
#include "heatcontent/estimate.hpp"
#include "heatcontent/geometry.hpp"
#include "heatcontent/parallel.hpp"

namespace heat {

/// Brownian heat content at time s (kernel (4 pi s)^{-d/2} e^{-|x|^2/4s}).
/// Quadrature for intervals, balls and boxes; Monte Carlo for smooth shapes.
HeatContentEstimate gaussian_heat_content(const Domain& omega, double s, const McBudget& budget = {});

/// Upper tail of |Z|^2 for Z standard normal in R^d, scaled so that
/// P(|Z| > v sqrt 2) = regularized_gamma_q(d/2, v^2).
double regularized_gamma_q(double a, double x);

/// H via the subordination identity (quadrature) or by direct simulation of X_t.
HeatContentEstimate heat_content_nd(AlphaParam alpha, const Domain& omega, double t, EstimateMethod method,
                                    const McBudget& budget = {});

/// Checks 0 <= G(s,t) <= (1/sqrt pi) H^{d-1}(dOmega) s^{1/2} eta_1(s) on a log grid of s,
/// where G(s,t) = t^{-1/alpha} H^{(2)}(t^{2/alpha} s) eta_1(s). Returns the worst ratio G/bound.
struct IntegrandBoundCheck {
    double worst_ratio = 0.0;
    double worst_s = 0.0;
    int points = 0;
    bool negative = false;
};

IntegrandBoundCheck subordination_integrand_check(AlphaParam alpha, const Domain& omega, double t, int points = 200);

/// Cauchy process from the layer K x (0, delta) into R^{d-1} x (-eps, 0):
/// (1/pi) |K| int_0^delta [atan((x+eps)/t) - atan(x/t)] dx in closed form.
double cauchy_slab_content(double delta, double eps, double t, double window_area);

/// Monte Carlo estimate of the same quantity for any alpha, using the stable
/// increment sampler on the slab's source layer.
HeatContentEstimate slab_content_mc(AlphaParam alpha, const Domain& slab, double t, const McBudget& budget = {});

/// H_{Omega,Omega^c} split along the tubes Omega_eps and Omega^delta, all four
/// pieces estimated on common samples.
struct TubeDecomposition {
    HeatContentEstimate total;
    HeatContentEstimate core_to_exterior;   // Omega \ Omega_eps -> Omega^c
    HeatContentEstimate tube_to_collar;     // Omega_eps -> Omega^delta
    HeatContentEstimate tube_to_far;        // Omega_eps -> Omega^c \ Omega^delta
    double residual = 0.0;                  // total minus the three pieces
    double residual_error = 0.0;
};

TubeDecomposition tube_decomposition(AlphaParam alpha, const Domain& omega, double t, double eps, double delta,
                                     const McBudget& budget = {});

/// Upper bound (1/pi) Gamma(1 - 1/alpha) H^{d-1}(dOmega) t^{1/alpha}, 1 < alpha <= 2.
double superc_bound(AlphaParam alpha, const Domain& omega, double t);

enum class AsymptoticLaw { TPowInvAlpha, TLog, LinearT };

std::string_view to_string(AsymptoticLaw law) noexcept;

/// Leading constant the small-time law predicts for H, computed from in-repo oracles.
double predicted_coefficient(AlphaParam alpha, const Domain& omega, AsymptoticLaw law);

/// Computes H on t_grid (quadrature where available) and fits the declared law
/// with a nuisance term. The grid must span >= 1.5 decades below 0.1.
ExpansionReport asymptote_fit(AlphaParam alpha, const Domain& omega, std::span<const double> t_grid,
                              AsymptoticLaw law, EstimateMethod method = EstimateMethod::SubordinationQuadrature,
                              const McBudget& budget = {});

/// One output row; CSV and JSON mirror these fields.
struct RunRecord {
    double alpha = 0.0;
    std::string domain;
    double t = 0.0;
    /// What `value` is: "H", "Q", "kernel", "perimeter", a fitted coefficient, ...
    std::string quantity = "H";
    std::string method;
    double value = 0.0;
    double err = 0.0;
    /// Predicted or oracle value when the row is a check (NaN otherwise).
    double reference = std::numeric_limits<double>::quiet_NaN();
    /// Verdict of the row's check, if it carries one.
    std::optional<bool> pass;
    std::uint64_t seed = 0;
    int n_steps = 0;
    int level = -1;
};

RunRecord make_record(AlphaParam alpha, const Domain& omega, const HeatContentEstimate& e);

}  // namespace heat
