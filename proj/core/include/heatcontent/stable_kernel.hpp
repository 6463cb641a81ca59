#pragma once

// Transition density p_t(x) of the rotationally invariant alpha-stable process
// in R^d, E[exp(i xi . X_t)] = exp(-t |xi|^alpha). The density is radial, so
// everything here takes r = |x|.

#include <span>
#include <string_view>
#include <vector>

#include "heatcontent/alpha.hpp"
#include "heatcontent/quadrature.hpp"
#include "heatcontent/random.hpp"

namespace heat {

enum class KernelMethod { ClosedFormGaussian, ClosedFormCauchy, SatoSeries, SubordinationQuadrature };

std::string_view to_string(KernelMethod method) noexcept;

struct KernelValue {
    double value = 0.0;
    KernelMethod method = KernelMethod::SubordinationQuadrature;
    double err_estimate = 0.0;
};

struct KernelOptions {
    double rel_tol = 1e-11;
    /// d = 1, alpha < 1: switch to the power series when r t^{-1/alpha} is at
    /// least this large. Set to infinity to force quadrature.
    double series_from = 4.0;
    double series_tol = 1e-16;
};

KernelValue kernel_eval(AlphaParam alpha, int d, double t, double r, const KernelOptions& opts = {});

/// A_{alpha,d}, the coefficient in p_t(r) / t -> A / r^{d+alpha} as t -> 0.
struct TailConstant {
    double alpha = 0.0;
    int d = 1;
    double value = 0.0;
};

TailConstant tail_constant(AlphaParam alpha, int d);

double kernel_tail_limit(AlphaParam alpha, int d, double r);

struct TailLimitCheck {
    double limit = 0.0;
    std::vector<double> t;
    std::vector<double> ratio;
    std::vector<double> rel_error;
    /// Relative error decreases along the (decreasing) t list.
    bool monotone = false;
};

TailLimitCheck kernel_tail_limit_check(AlphaParam alpha, int d, double r,
                                       std::span<const double> ts = std::span<const double>());

/// Coefficients a_n of p_1(z) = sum_n a_n z^{-1-n alpha} (d = 1, 0 < alpha < 1).
struct SatoCoefficients {
    double alpha = 0.0;
    std::vector<double> a;
};

SatoCoefficients sato_coefficients(double alpha, int n_max);

/// Upper bound Gamma(n alpha + 1) / n! on |a_n|.
double sato_coefficient_bound(double alpha, int n);

struct SatoSum {
    double value = 0.0;
    /// Bound on the omitted tail from |a_n| <= Gamma(n alpha + 1) / n!.
    double remainder = 0.0;
    int terms = 0;
};

/// Truncated series at z > 1; stops once the coefficient bound times
/// z^{-1-n alpha} falls below tol relative to the n = 1 bound.
SatoSum sato_series(double alpha, double z, double tol = 1e-16);

/// sqrt(2 S_t) Z with Z standard normal in R^d, written to out (size d).
void sample_stable_increment(AlphaParam alpha, double t, RandomStream& rng, std::span<double> out);

std::vector<double> sample_stable_increment(AlphaParam alpha, int d, double t, RandomStream& rng);

/// Observed range of p_t(r) / min{t^{-d/alpha}, t r^{-d-alpha}} over a grid.
struct EnvelopeBand {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    /// Smallest c with 1/c <= ratio <= c on the grid.
    double c = 0.0;
};

EnvelopeBand calibrate_kernel_envelope(AlphaParam alpha, int d, std::span<const double> ts,
                                       std::span<const double> rs);

/// Total mass of p_t by radial quadrature (should be 1).
QuadratureResult kernel_mass(AlphaParam alpha, int d, double t, double rel_tol = 1e-8);

/// |S^{d-1}| and |B^d|.
double sphere_area(int d);
double ball_volume(int d);

}  // namespace heat
