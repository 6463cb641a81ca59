#pragma once

// Adaptive Gauss-Kronrod (10/21) quadrature.
//
// Intervals are bisected worst-first until the summed error estimate meets
// max(abs_tol, rel_tol * |I|) or max_intervals is reached. The per-interval
// error estimate follows the QUADPACK qk21 heuristic.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace heat {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;

    QuadratureResult& operator+=(const QuadratureResult& other) {
        value += other.value;
        error += other.error;
        evaluations += other.evaluations;
        converged = converged && other.converged;
        return *this;
    }
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.0,
    0.14887433898163122,
    0.2943928627014602,
    0.43339539412924721,
    0.56275713466860466,
    0.67940956829902444,
    0.7808177265864169,
    0.86506336668898454,
    0.93015749135570824,
    0.97390652851717174,
    0.99565716302580809,
};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.1494455540029169,
    0.14773910490133849,
    0.14277593857706009,
    0.13470921731147334,
    0.12349197626206584,
    0.10938715880229764,
    0.093125454583697601,
    0.075039674810919957,
    0.054755896574351995,
    0.032558162307964725,
    0.011694638867371874,
};

// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.29552422471475287,
    0.26926671930999635,
    0.21908636251598204,
    0.14945134915058059,
    0.066671344308688138,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 21> fv{};
    fv[0] = f(center);
    for (int i = 1; i <= 10; ++i) {
        const double dx = half * kKronrodNodes[i];
        fv[2 * i - 1] = f(center - dx);
        fv[2 * i] = f(center + dx);
    }

    double kronrod = kKronrodWeights[0] * fv[0];
    double gauss = 0.0;
    double abs_sum = kKronrodWeights[0] * std::abs(fv[0]);
    for (int i = 1; i <= 10; ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        kronrod += kKronrodWeights[i] * pair;
        abs_sum += kKronrodWeights[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }

    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[0] * std::abs(fv[0] - mean);
    for (int i = 1; i <= 10; ++i) {
        asc += kKronrodWeights[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
    }

    const double scale = std::abs(half);
    const double result = kronrod * half;
    const double resabs = abs_sum * scale;
    const double resasc = asc * scale;
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, result, err};
}

}  // namespace detail

/// Integrates f over the partition given by sorted breakpoints (at least two).
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints, const QuadratureOptions& opts = {}) {
    QuadratureResult out;
    if (breakpoints.size() < 2) return out;

    std::priority_queue<detail::Segment> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) continue;
        auto seg = detail::gauss_kronrod21(f, breakpoints[i], breakpoints[i + 1]);
        out.evaluations += 21;
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }

    const auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (!heap.empty() && total_err > tolerance()) {
        if (static_cast<int>(heap.size()) >= opts.max_intervals) {
            out.converged = false;
            break;
        }
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            out.converged = false;
            break;
        }
        heap.pop();
        auto left = detail::gauss_kronrod21(f, worst.a, mid);
        auto right = detail::gauss_kronrod21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed accumulated cancellation from the running updates.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error = error;
    return out;
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
    if (a == b) return {};
    if (a > b) {
        auto r = integrate(std::forward<F>(f), b, a, opts);
        r.value = -r.value;
        return r;
    }
    const std::array<double, 2> pts = {a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts), opts);
}

/// Integral over [a, inf) through x = a + u / (1 - u).
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double a, const QuadratureOptions& opts = {}) {
    auto g = [&](double u) {
        const double w = 1.0 - u;
        return f(a + u / w) / (w * w);
    };
    return integrate(g, 0.0, 1.0, opts);
}

/// Integral over [lo, hi] with 0 < lo < hi through x = exp(y). The log range is
/// pre-split into pieces of width `log_step` so features spread across many
/// decades are not missed by the first Kronrod pass.
template <class F>
QuadratureResult integrate_log(F&& f, double lo, double hi, const QuadratureOptions& opts = {},
                               double log_step = 2.0) {
    if (!(hi > lo) || !(lo > 0.0)) return {};
    const double y0 = std::log(lo);
    const double y1 = std::log(hi);
    const int pieces = std::max(1, static_cast<int>(std::ceil((y1 - y0) / log_step)));
    std::vector<double> pts(pieces + 1);
    for (int i = 0; i <= pieces; ++i) pts[i] = y0 + (y1 - y0) * i / pieces;
    auto g = [&](double y) {
        const double x = std::exp(y);
        return f(x) * x;
    };
    QuadratureOptions o = opts;
    o.max_intervals = std::max(opts.max_intervals, 4 * pieces);
    return integrate(g, std::span<const double>(pts), o);
}

}  // namespace heat
