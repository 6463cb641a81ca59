#pragma once

// Heat content H(t) = int_Omega P^x(X_t not in Omega) dx of an interval.

#include <span>
#include <string>
#include <vector>

#include "heatcontent/alpha.hpp"
#include "heatcontent/asymptotics.hpp"
#include "heatcontent/estimate.hpp"

namespace heat {

struct Interval {
    double a = 0.0;
    double b = 1.0;

    Interval() = default;
    Interval(double lo, double hi);
    double length() const { return b - a; }
};

/// Brownian (alpha = 2) heat content of an interval of length L at time s.
double gaussian_heat_content_interval(double L, double s);

/// H for alpha in (1, 2] minus its leading term (2/sqrt(pi)) sqrt(s) at the
/// Brownian level, computed without cancellation. Always <= 0.
double gaussian_heat_content_interval_remainder(double L, double s);

/// int_s^inf erfc, i.e. exp(-x^2)/sqrt(pi) - x erfc(x), accurate for large x.
double integrated_erfc(double x);

/// Ground truth for every alpha: H(t) = E[H^{(2)}(S_t)] by quadrature against
/// the subordinator density.
HeatContentEstimate heat_content_interval_exact(AlphaParam alpha, const Interval& omega, double t,
                                                double rel_tol = 1e-13);

/// Same but for the part of H left after the t^{1/alpha} term, 1 < alpha <= 2.
HeatContentEstimate heat_content_interval_remainder(AlphaParam alpha, const Interval& omega, double t,
                                                    double rel_tol = 1e-12);

/// Exact formula for alpha = 1, valid at every t > 0.
double cauchy_heat_content_interval(double L, double t);

/// int_0^W P(X_1 >= w) dw for the unit-time alpha-stable variable.
double integrated_tail(AlphaParam alpha, double W, double rel_tol = 1e-13);

/// E[X_1; X_1 >= 0] by radial quadrature of the kernel (1 < alpha <= 2).
double positive_part_mean(AlphaParam alpha);

struct ExpansionTerm {
    enum class Kind { Power, PowerLog };
    Kind kind = Kind::Power;
    /// Exponent q in t^q, or t^q ln(1/t).
    double exponent = 1.0;
    double coefficient = 0.0;
    std::string label;

    double basis(double t) const;
};

struct Expansion1D {
    AlphaParam alpha{1.0};
    double length = 1.0;
    std::vector<ExpansionTerm> terms;
    /// Order p of the remainder bound C t^p (in log-log slope terms).
    double remainder_order = 1.0;
    std::string remainder_label;
    /// Upper end of the t-range where the expansion is claimed.
    double t_max = 0.0;

    double evaluate(double t) const;
};

/// Closed-form and series-defined coefficients of the small-t law.
/// For 0 < alpha < 1 the t^{1/alpha} (or t^N) constant is evaluated numerically.
Expansion1D expansion_terms(AlphaParam alpha, const Interval& omega);

/// Sums over n of a_n L^{1-n alpha} t^n / (n alpha (1 - n alpha)) for
/// n in [first, last], skipping n alpha = 1. last < 0 means to convergence.
double sato_heat_sum(double alpha, double L, double t, int first, int last);

struct RemainderReport {
    std::vector<double> t;
    std::vector<double> exact;
    std::vector<double> prefix;
    std::vector<double> remainder;
    double slope = 0.0;
    double claimed_order = 0.0;
    /// Points whose remainder underflowed to zero (excluded from the fit).
    int underflowed = 0;
    bool pass = false;
};

/// R(t) = exact - expansion prefix on t_grid, and the log |R| vs log t slope.
RemainderReport remainder_check(AlphaParam alpha, const Interval& omega, std::span<const double> t_grid,
                                double slack = 0.1);

/// Fits exact values on a log grid with the basis of the small-t law: leading
/// term first, then the remaining terms and nuisance powers. t_lo, t_hi <= 0
/// select the regime's default window ([1e-6, 1e-3] for alpha > 1, [1e-5, 1e-2]
/// for alpha = 1, [1e-3, 0.1] below).
ExpansionReport fit_expansion_1d(AlphaParam alpha, const Interval& omega, double t_lo = 0.0, double t_hi = 0.0,
                                 int points = 13);

}  // namespace heat
