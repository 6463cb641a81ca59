#pragma once

// Weighted least-squares fits of small-time laws on mixed bases.

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace heat {

struct BasisFunction {
    enum class Kind { Power, PowerLog };
    Kind kind = Kind::Power;
    double exponent = 1.0;

    static BasisFunction power(double q) { return {Kind::Power, q}; }
    /// t^q ln(1/t)
    static BasisFunction power_log(double q) { return {Kind::PowerLog, q}; }

    double eval(double t) const;
    std::string label() const;
};

struct DataPoint {
    double t = 0.0;
    double value = 0.0;
    double err = 0.0;
};

struct ExpansionReport {
    std::string law;
    std::vector<std::string> basis;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    /// Half-width of the 95% Student-t interval per coefficient.
    std::vector<double> ci;

    double fitted_coefficient = 0.0;
    double fitted_ci = 0.0;
    double predicted_coefficient = std::numeric_limits<double>::quiet_NaN();
    double relative_gap = std::numeric_limits<double>::quiet_NaN();

    double t_lo = 0.0;
    double t_hi = 0.0;
    int points = 0;
    double condition_number = 0.0;
    /// Slope of log |residual| against log t, a check that the fit absorbed the
    /// leading behaviour (NaN if residuals vanish).
    double residual_slope = std::numeric_limits<double>::quiet_NaN();
    double max_relative_residual = 0.0;

    /// |fitted - predicted| <= tol * |predicted|.
    bool within(double tol) const { return relative_gap <= tol; }
};

inline constexpr double kMaxConditionNumber = 1e8;

/// Fits data with the ordered basis; the first element is the leading term.
/// Needs >= 6 points spanning >= 1.5 decades in t (GridTooNarrow) and a
/// column-scaled condition number <= 1e8 (IllConditioned). Weights 1/err^2,
/// with err floored at 1e-15 |value|.
ExpansionReport fit_leading(std::span<const DataPoint> data, std::span<const BasisFunction> basis,
                            double predicted = std::numeric_limits<double>::quiet_NaN(), std::string law = {});

/// Ordinary least-squares slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

std::string to_json(const ExpansionReport& report);

}  // namespace heat
