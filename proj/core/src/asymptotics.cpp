#include "heatcontent/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <sstream>

#include "heatcontent/errors.hpp"
#include "json.hpp"

namespace heat {

double BasisFunction::eval(double t) const {
    const double p = std::pow(t, exponent);
    return kind == Kind::Power ? p : p * std::log(1.0 / t);
}

std::string BasisFunction::label() const {
    std::ostringstream s;
    if (exponent == 0.0 && kind == Kind::Power) return "1";
    s << "t";
    if (exponent != 1.0) s << '^' << exponent;
    if (kind == Kind::PowerLog) s << " ln(1/t)";
    return s.str();
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(std::abs(y[i]) > 0.0) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExpansionReport fit_leading(std::span<const DataPoint> data, std::span<const BasisFunction> basis, double predicted,
                            std::string law) {
    const int n = static_cast<int>(data.size());
    const int p = static_cast<int>(basis.size());
    require(p >= 1, ErrorKind::DomainError, "empty basis");
    if (n < 6) fail(ErrorKind::GridTooNarrow, "fit needs at least 6 points");
    double tlo = data[0].t, thi = data[0].t;
    for (const auto& d : data) {
        require(d.t > 0.0, ErrorKind::DomainError, "t must be positive");
        tlo = std::min(tlo, d.t);
        thi = std::max(thi, d.t);
    }
    if (std::log10(thi / tlo) < 1.5 - 1e-12) fail(ErrorKind::GridTooNarrow, "t grid must span at least 1.5 decades");
    if (n <= p) fail(ErrorKind::GridTooNarrow, "more basis functions than points");

    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double err = std::max({data[i].err, 1e-15 * std::abs(data[i].value), 1e-300});
        const double w = 1.0 / err;
        for (int j = 0; j < p; ++j) X(i, j) = w * basis[j].eval(data[i].t);
        y(i) = w * data[i].value;
    }
    Eigen::VectorXd scale = X.colwise().norm().transpose();
    for (int j = 0; j < p; ++j) {
        if (!(scale(j) > 0.0)) fail(ErrorKind::IllConditioned, "basis column vanishes on the grid");
        X.col(j) /= scale(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(p - 1);
    if (!(cond <= kMaxConditionNumber))
        fail(ErrorKind::IllConditioned, "basis is collinear on this grid (condition number above 1e8)");

    const Eigen::VectorXd beta_s = svd.solve(y);
    const Eigen::VectorXd resid = y - X * beta_s;
    const int dof = n - p;
    const double s2 = resid.squaredNorm() / dof;
    // Covariance of the scaled coefficients: V diag(1/sigma^2) V^T, times the residual variance
    // (data are smooth quadrature outputs, so misfit rather than err dominates).
    const Eigen::MatrixXd Vs = svd.matrixV() * sv.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd cov = Vs * Vs.transpose() * std::max(s2, 1.0);

    boost::math::students_t dist(dof);
    const double q = boost::math::quantile(boost::math::complement(dist, 0.025));

    ExpansionReport r;
    r.law = std::move(law);
    r.points = n;
    r.t_lo = tlo;
    r.t_hi = thi;
    r.condition_number = cond;
    for (int j = 0; j < p; ++j) {
        r.basis.push_back(basis[j].label());
        r.coefficients.push_back(beta_s(j) / scale(j));
        r.std_errors.push_back(std::sqrt(cov(j, j)) / scale(j));
        r.ci.push_back(q * r.std_errors.back());
    }
    r.fitted_coefficient = r.coefficients[0];
    r.fitted_ci = r.ci[0];
    r.predicted_coefficient = predicted;
    if (std::isfinite(predicted) && predicted != 0.0)
        r.relative_gap = std::abs(r.fitted_coefficient - predicted) / std::abs(predicted);

    std::vector<double> ts(n), rs(n);
    for (int i = 0; i < n; ++i) {
        double model = 0.0;
        for (int j = 0; j < p; ++j) model += r.coefficients[j] * basis[j].eval(data[i].t);
        ts[i] = data[i].t;
        rs[i] = data[i].value - model;
        if (data[i].value != 0.0)
            r.max_relative_residual = std::max(r.max_relative_residual, std::abs(rs[i] / data[i].value));
    }
    r.residual_slope = loglog_slope(ts, rs);
    return r;
}

std::string to_json(const ExpansionReport& r) {
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    nlohmann::json j;
    j["law"] = r.law;
    j["basis"] = r.basis;
    j["coefficients"] = r.coefficients;
    j["std_errors"] = r.std_errors;
    j["ci95"] = r.ci;
    j["fitted_coefficient"] = r.fitted_coefficient;
    j["fitted_ci95"] = r.fitted_ci;
    j["predicted_coefficient"] = num(r.predicted_coefficient);
    j["relative_gap"] = num(r.relative_gap);
    j["t_range"] = {r.t_lo, r.t_hi};
    j["points"] = r.points;
    j["condition_number"] = r.condition_number;
    j["residual_slope"] = num(r.residual_slope);
    j["max_relative_residual"] = r.max_relative_residual;
    return j.dump();
}

}  // namespace heat
