#pragma once

// Spectral heat content Q(t) = int_Omega P^x(tau_Omega > t) dx by killed paths,
// and the two-sided bounds on |Omega| - Q.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heatcontent/alpha.hpp"
#include "heatcontent/estimate.hpp"
#include "heatcontent/geometry.hpp"
#include "heatcontent/parallel.hpp"

namespace heat {

struct KilledPathConfig {
    /// Steps of the coarsest monitoring grid on [0, t].
    int n_steps = 16;
    /// Each level doubles n_steps; all levels share the finest path.
    int refinement_levels = 4;
};

struct SpectralLevel {
    int n_steps = 0;
    double q = 0.0;
    double q_err = 0.0;
    /// |Omega| - q with its own standard error.
    double deficit = 0.0;
    double deficit_err = 0.0;
};

struct SpectralEstimate {
    double t = 0.0;
    double volume = 0.0;
    /// Coarse to fine. Grid monitoring misses exits between grid times, so
    /// every level over-estimates Q.
    std::vector<SpectralLevel> levels;
    /// Two finest levels combined assuming an n^{-rate} bias.
    double rate = 0.5;
    double q_extrapolated = 0.0;
    double deficit_extrapolated = 0.0;
    double extrapolated_err = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    HeatContentEstimate as_estimate() const;
};

SpectralEstimate spectral_heat_content(AlphaParam alpha, const Domain& omega, double t,
                                       const KilledPathConfig& cfg = {}, const McBudget& budget = {});

/// Q at every monitoring time k t_max / n_steps on one set of paths, so the
/// curve is non-increasing by construction.
struct SpectralCurve {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> q_err;
};

SpectralCurve spectral_heat_curve(AlphaParam alpha, const Domain& omega, double t_max, int n_steps,
                                  const McBudget& budget = {});

struct SandwichBounds {
    /// H_{Omega,Omega^c}(t) <= |Omega| - Q(t).
    double lower = 0.0;
    double lower_err = 0.0;
    /// 2^{(d+2)/2} int_Omega E[exp(-rho^2 / (8 t^{2/alpha} S_1))] dx by co-area layers.
    double upper = 0.0;
    double upper_err = 0.0;
    /// 2^{(d+2+3 alpha)/2} C0 Gamma(alpha/2) t int rho^{-alpha}, bounding `upper` (alpha < 2).
    double moment_upper = 0.0;
    int layers = 0;
};

SandwichBounds sandwich_bounds(AlphaParam alpha, const Domain& omega, double t, int layers = 64,
                               const McBudget& budget = {});

struct SandwichReport {
    SandwichBounds bounds;
    SpectralEstimate estimate;
    double sigmas = 3.0;
    bool lower_ok = false;
    bool upper_ok = false;
    bool pass() const { return lower_ok && upper_ok; }
};

SandwichReport sandwich_check(AlphaParam alpha, const Domain& omega, double t, const KilledPathConfig& cfg = {},
                              const McBudget& budget = {}, double sigmas = 3.0);

/// Coupled exit probabilities from x: the stable path is the Brownian path
/// read at the subordinator times, and the Brownian side is also monitored on
/// `substeps` bridge points inside each step.
struct SubordinationExitCheck {
    double p_stable = 0.0;
    double p_stable_err = 0.0;
    double p_brownian = 0.0;
    double p_brownian_err = 0.0;
    std::uint64_t samples = 0;
    bool pass(double sigmas = 3.0) const;
};

SubordinationExitCheck subordination_exit_check(AlphaParam alpha, const Domain& omega, std::span<const double> x,
                                                double t, int n_steps = 64, int substeps = 8,
                                                const McBudget& budget = {});

/// Pointwise check of (c / 2^{d+alpha}) rho^{-alpha}(x) <= int_{Omega^c} |x-y|^{-d-alpha} dy
/// at random interior points, with c = |B_1| / 2 (valid for convex domains).
struct ExteriorVolumeCheck {
    int points = 0;
    double min_ratio = 0.0;  // exterior integral over the lower bound
    double constant = 0.0;
    /// P_alpha(Omega) against (c / 2^{d+alpha}) int rho^{-alpha}.
    double perimeter = 0.0;
    double integrated_lower = 0.0;
    bool pass() const { return min_ratio >= 1.0 && perimeter >= integrated_lower; }
};

ExteriorVolumeCheck exterior_volume_check(const Domain& omega, double alpha, int points, std::uint64_t seed);

}  // namespace heat
