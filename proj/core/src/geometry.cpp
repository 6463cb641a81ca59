#include "heatcontent/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "heatcontent/errors.hpp"
#include "heatcontent/quadrature.hpp"
#include "heatcontent/stable_kernel.hpp"

namespace heat {
namespace {

constexpr double kPi = std::numbers::pi;

void check_dim(int d) {
    require(d >= 1 && d <= kMaxDim, ErrorKind::DomainError, "dimension must be in [1, 8]");
}

// Signed distance to an axis box, negative inside (the usual graphics sign).
double box_distance(std::span<const double> x, const Point& lo, const Point& hi, int d) {
    double outside = 0.0;
    double inside = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        const double q = std::max(lo[i] - x[i], x[i] - hi[i]);
        if (q > 0.0) outside += q * q;
        inside = std::max(inside, q);
    }
    return outside > 0.0 ? std::sqrt(outside) : inside;
}

// Rounded box: half extents h centred at 0 dilated by radius.
double rounded_box_distance(std::span<const double> x, const Point& h, int d) {
    double outside = 0.0;
    double inside = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        const double q = std::abs(x[i]) - h[i];
        if (q > 0.0) outside += q * q;
        inside = std::max(inside, q);
    }
    return std::sqrt(outside) + std::min(inside, 0.0);
}

// Elementary symmetric polynomials e_k of the numbers v, k = 0..n.
std::vector<double> elementary_symmetric(const std::vector<double>& v) {
    std::vector<double> e(v.size() + 1, 0.0);
    e[0] = 1.0;
    for (double x : v)
        for (std::size_t k = v.size(); k >= 1; --k) e[k] += e[k - 1] * x;
    return e;
}

// Quermass-type expansion: surface and volume of a box with sides L dilated by r.
// Only d <= 3 is needed.
double dilated_box_volume(const std::vector<double>& L, double r) {
    const int d = static_cast<int>(L.size());
    const auto e = elementary_symmetric(L);
    if (d == 1) return e[1] + 2.0 * r;
    if (d == 2) return e[2] + 2.0 * e[1] * r + kPi * r * r;
    return e[3] + 2.0 * e[2] * r + kPi * e[1] * r * r + 4.0 / 3.0 * kPi * r * r * r;
}

double dilated_box_surface(const std::vector<double>& L, double r) {
    const int d = static_cast<int>(L.size());
    const auto e = elementary_symmetric(L);
    if (d == 1) return 2.0;
    if (d == 2) return 2.0 * e[1] + 2.0 * kPi * r;
    return 2.0 * e[2] + 2.0 * kPi * e[1] * r + 4.0 * kPi * r * r;
}

double box_surface(const std::vector<double>& L) {
    if (L.size() == 1) return 2.0;
    double s = 0.0;
    for (std::size_t i = 0; i < L.size(); ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < L.size(); ++j)
            if (j != i) p *= L[j];
        s += 2.0 * p;
    }
    return s;
}

// Outside part of the ray x + t theta, t > 0, contributes
// int 1[outside] t^{-1-alpha} dt = sum (a^{-alpha} - b^{-alpha}) / alpha.
double ray_exterior(const Domain& omega, std::span<const double> x, std::span<const double> theta, double alpha,
                    std::vector<Chord>& buf) {
    omega.chords(x, theta, buf);
    double sum = 0.0;
    double start = 0.0;  // inside from 0 up to the end of the chord containing 0
    bool first = true;
    for (const auto& c : buf) {
        if (c.t1 <= 0.0) continue;
        if (first) {
            start = c.t1;
            first = false;
            continue;
        }
        sum += std::pow(start, -alpha) - std::pow(c.t0, -alpha);
        start = c.t1;
    }
    if (first) return std::numeric_limits<double>::infinity();  // x not inside
    sum += std::pow(start, -alpha);
    return sum / alpha;
}

void orthonormal_frame_3d(double ct, double phi, double* v) {
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    v[0] = st * std::cos(phi);
    v[1] = st * std::sin(phi);
    v[2] = ct;
}

}  // namespace

std::string_view to_string(DomainKind kind) noexcept {
    switch (kind) {
        case DomainKind::Interval: return "interval";
        case DomainKind::Ball: return "ball";
        case DomainKind::Box: return "box";
        case DomainKind::Slab: return "slab";
        case DomainKind::Smooth: return "smooth";
    }
    return "unknown";
}

Domain Domain::interval(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b) && a < b, ErrorKind::DomainError, "interval needs a < b");
    Domain o;
    o.kind_ = DomainKind::Interval;
    o.dim_ = 1;
    o.lo_[0] = a;
    o.hi_[0] = b;
    o.bc_[0] = 0.5 * (a + b);
    o.br_ = 0.5 * (b - a);
    o.volume_ = b - a;
    o.surface_ = 2.0;
    o.inradius_ = o.reach_ = 0.5 * (b - a);
    std::ostringstream id;
    id << "interval:" << a << ':' << b;
    o.id_ = id.str();
    return o;
}

Domain Domain::ball(std::span<const double> center, double radius) {
    const int d = static_cast<int>(center.size());
    check_dim(d);
    require(radius > 0.0, ErrorKind::DomainError, "ball radius must be positive");
    Domain o;
    o.kind_ = DomainKind::Ball;
    o.dim_ = d;
    for (int i = 0; i < d; ++i) {
        o.bc_[i] = center[i];
        o.lo_[i] = center[i] - radius;
        o.hi_[i] = center[i] + radius;
    }
    o.br_ = o.radius_ = radius;
    o.volume_ = ball_volume(d) * std::pow(radius, d);
    o.surface_ = sphere_area(d) * std::pow(radius, d - 1);
    o.inradius_ = o.reach_ = radius;
    std::ostringstream id;
    id << "ball:" << d << ':' << radius;
    o.id_ = id.str();
    return o;
}

Domain Domain::ball(int d, double radius) {
    check_dim(d);
    const std::vector<double> c(d, 0.0);
    return ball(c, radius);
}

Domain Domain::box(std::span<const double> lo, std::span<const double> hi) {
    const int d = static_cast<int>(lo.size());
    check_dim(d);
    require(hi.size() == lo.size(), ErrorKind::DomainError, "box corners differ in dimension");
    Domain o;
    o.kind_ = d == 1 ? DomainKind::Interval : DomainKind::Box;
    o.dim_ = d;
    std::vector<double> L(d);
    double diag = 0.0;
    double vol = 1.0;
    o.inradius_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        require(lo[i] < hi[i], ErrorKind::DomainError, "box needs lo < hi on every axis");
        o.lo_[i] = lo[i];
        o.hi_[i] = hi[i];
        o.bc_[i] = 0.5 * (lo[i] + hi[i]);
        L[i] = hi[i] - lo[i];
        diag += L[i] * L[i];
        vol *= L[i];
        o.inradius_ = std::min(o.inradius_, 0.5 * L[i]);
    }
    o.br_ = 0.5 * std::sqrt(diag);
    o.reach_ = o.inradius_;
    o.volume_ = vol;
    o.surface_ = box_surface(L);
    std::ostringstream id;
    id << "box:" << d;
    for (int i = 0; i < d; ++i) id << (i ? ',' : ':') << L[i];
    o.id_ = id.str();
    return o;
}

Domain Domain::cube(int d, double side) {
    check_dim(d);
    const std::vector<double> lo(d, 0.0), hi(d, side);
    return box(lo, hi);
}

Domain Domain::slab(std::span<const double> window_lo, std::span<const double> window_hi, double delta, double eps) {
    require(delta > 0.0 && eps > 0.0, ErrorKind::DomainError, "slab needs delta > 0 and eps > 0");
    require(window_lo.size() == window_hi.size(), ErrorKind::DomainError, "window corners differ in dimension");
    std::vector<double> lo(window_lo.begin(), window_lo.end()), hi(window_hi.begin(), window_hi.end());
    lo.push_back(0.0);
    hi.push_back(delta);
    Domain o = box(lo, hi);
    o.kind_ = DomainKind::Slab;
    o.delta_ = delta;
    o.eps_ = eps;
    std::ostringstream id;
    id << "slab:" << o.dim_ << ':' << delta << ':' << eps;
    o.id_ = id.str();
    return o;
}

Domain Domain::rounded_box(std::span<const double> half_extents, double radius) {
    const int d = static_cast<int>(half_extents.size());
    check_dim(d);
    require(radius > 0.0, ErrorKind::DomainError, "rounding radius must be positive");
    Domain o;
    o.kind_ = DomainKind::Smooth;
    o.dim_ = d;
    double diag = 0.0;
    double hmin = std::numeric_limits<double>::infinity();
    std::vector<double> L(d);
    for (int i = 0; i < d; ++i) {
        require(half_extents[i] >= 0.0, ErrorKind::DomainError, "half extents must be non-negative");
        o.extra_[i] = half_extents[i];
        o.lo_[i] = -half_extents[i] - radius;
        o.hi_[i] = half_extents[i] + radius;
        diag += (half_extents[i] + radius) * (half_extents[i] + radius);
        hmin = std::min(hmin, half_extents[i]);
        L[i] = 2.0 * half_extents[i];
    }
    o.br_ = std::sqrt(diag);
    o.radius_ = radius;
    o.reach_ = radius;
    o.inradius_ = radius + hmin;
    if (d <= 3) {
        o.volume_ = dilated_box_volume(L, radius);
        o.surface_ = dilated_box_surface(L, radius);
    }
    const Point h = o.extra_;
    o.sdf_fn_ = std::make_shared<const SignedDistance>(
        [h, d, radius](std::span<const double> x) { return radius - rounded_box_distance(x, h, d); });
    std::ostringstream id;
    id << "rounded_box:" << d << ':' << radius;
    for (int i = 0; i < d; ++i) id << (i ? ',' : ':') << half_extents[i];
    o.id_ = id.str();
    return o;
}

Domain Domain::smooth(int d, SignedDistance sdf, std::span<const double> lo, std::span<const double> hi, double reach,
                      double inradius, std::optional<double> volume, std::optional<double> surface,
                      std::string name) {
    check_dim(d);
    require(static_cast<int>(lo.size()) == d && static_cast<int>(hi.size()) == d, ErrorKind::DomainError,
            "bounding box must match the dimension");
    require(static_cast<bool>(sdf), ErrorKind::DomainError, "signed distance is empty");
    require(inradius > 0.0, ErrorKind::DomainError, "domain has empty interior");
    Domain o;
    o.kind_ = DomainKind::Smooth;
    o.dim_ = d;
    double diag = 0.0;
    for (int i = 0; i < d; ++i) {
        require(lo[i] < hi[i], ErrorKind::DomainError, "bounding box needs lo < hi");
        o.lo_[i] = lo[i];
        o.hi_[i] = hi[i];
        o.bc_[i] = 0.5 * (lo[i] + hi[i]);
        diag += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    }
    o.br_ = 0.5 * std::sqrt(diag);
    o.reach_ = reach;
    o.inradius_ = inradius;
    o.volume_ = volume;
    o.surface_ = surface;
    o.sdf_fn_ = std::make_shared<const SignedDistance>(std::move(sdf));
    o.id_ = std::move(name);
    return o;
}

double Domain::slab_window_area() const {
    double a = 1.0;
    for (int i = 0; i + 1 < dim_; ++i) a *= hi_[i] - lo_[i];
    return a;
}

double Domain::sdf(std::span<const double> x) const {
    switch (kind_) {
        case DomainKind::Interval: return std::min(x[0] - lo_[0], hi_[0] - x[0]);
        case DomainKind::Ball: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) s += (x[i] - bc_[i]) * (x[i] - bc_[i]);
            return radius_ - std::sqrt(s);
        }
        case DomainKind::Box:
        case DomainKind::Slab: return -box_distance(x, lo_, hi_, dim_);
        case DomainKind::Smooth: return (*sdf_fn_)(x.first(dim_));
    }
    return 0.0;
}

void Domain::sample_uniform(RandomStream& rng, std::span<double> out) const {
    switch (kind_) {
        case DomainKind::Ball: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) {
                out[i] = rng.normal();
                s += out[i] * out[i];
            }
            const double r = radius_ * std::pow(rng.uniform(), 1.0 / dim_) / std::sqrt(s);
            for (int i = 0; i < dim_; ++i) out[i] = bc_[i] + r * out[i];
            return;
        }
        case DomainKind::Interval:
        case DomainKind::Box:
        case DomainKind::Slab:
            for (int i = 0; i < dim_; ++i) out[i] = lo_[i] + (hi_[i] - lo_[i]) * rng.uniform();
            return;
        case DomainKind::Smooth:
            for (int tries = 0; tries < 100000; ++tries) {
                for (int i = 0; i < dim_; ++i) out[i] = lo_[i] + (hi_[i] - lo_[i]) * rng.uniform();
                if (contains(out)) return;
            }
            fail(ErrorKind::DomainError, "rejection sampling found no interior point (empty domain?)");
    }
}

void Domain::chords(std::span<const double> x, std::span<const double> dir, std::vector<Chord>& out) const {
    out.clear();
    switch (kind_) {
        case DomainKind::Ball: {
            double b = 0.0, c = -radius_ * radius_;
            for (int i = 0; i < dim_; ++i) {
                const double y = x[i] - bc_[i];
                b += y * dir[i];
                c += y * y;
            }
            const double disc = b * b - c;
            if (disc <= 0.0) return;
            const double s = std::sqrt(disc);
            out.push_back({-b - s, -b + s});
            return;
        }
        case DomainKind::Interval:
        case DomainKind::Box:
        case DomainKind::Slab: {
            double t0 = -std::numeric_limits<double>::infinity();
            double t1 = std::numeric_limits<double>::infinity();
            for (int i = 0; i < dim_; ++i) {
                if (dir[i] == 0.0) {
                    if (x[i] <= lo_[i] || x[i] >= hi_[i]) return;
                    continue;
                }
                double a = (lo_[i] - x[i]) / dir[i];
                double b = (hi_[i] - x[i]) / dir[i];
                if (a > b) std::swap(a, b);
                t0 = std::max(t0, a);
                t1 = std::min(t1, b);
            }
            if (t1 > t0) out.push_back({t0, t1});
            return;
        }
        case DomainKind::Smooth: {
            // Restrict to the bounding ball, then sphere-trace sign changes of rho.
            double b = 0.0, c = -br_ * br_;
            for (int i = 0; i < dim_; ++i) {
                const double y = x[i] - bc_[i];
                b += y * dir[i];
                c += y * y;
            }
            const double disc = b * b - c;
            if (disc <= 0.0) return;
            const double s = std::sqrt(disc);
            const double ta = -b - s, tb = -b + s;
            Point p{};
            auto eval = [&](double t) {
                for (int i = 0; i < dim_; ++i) p[i] = x[i] + t * dir[i];
                return sdf(std::span<const double>(p.data(), dim_));
            };
            auto root = [&](double lo, double hi, double vlo) {
                for (int k = 0; k < 80 && hi - lo > 1e-14 * br_; ++k) {
                    const double mid = 0.5 * (lo + hi);
                    const double vm = eval(mid);
                    if ((vm > 0.0) == (vlo > 0.0)) {
                        lo = mid;
                        vlo = vm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            };
            const double hmin = 1e-9 * br_;
            double t = ta;
            double v = eval(t);
            double open_at = v > 0.0 ? t : std::numeric_limits<double>::quiet_NaN();
            for (int steps = 0; steps < 100000 && t < tb; ++steps) {
                const double tn = std::min(tb, t + std::max(std::abs(v), hmin));
                const double vn = eval(tn);
                if ((vn > 0.0) != (v > 0.0)) {
                    const double r = root(t, tn, v);
                    if (vn > 0.0) {
                        open_at = r;
                    } else {
                        out.push_back({open_at, r});
                        open_at = std::numeric_limits<double>::quiet_NaN();
                    }
                }
                t = tn;
                v = vn;
            }
            if (!std::isnan(open_at)) out.push_back({open_at, tb});
            return;
        }
    }
}

bool Domain::in_inner_tube(std::span<const double> x, double eps) const {
    const double r = sdf(x);
    return r > 0.0 && r < eps;
}

bool Domain::in_outer_tube(std::span<const double> x, double delta) const {
    const double r = sdf(x);
    return r <= 0.0 && -r < delta;
}

double eikonal_defect(const Domain& omega, int n, RandomStream& rng, double h) {
    const int d = omega.dim();
    Point x{}, y{};
    double worst = 0.0;
    const double scale = 2.0 * omega.bound_radius();
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < d; ++i) {
            const double w = omega.hi()[i] - omega.lo()[i];
            x[i] = omega.lo()[i] - 0.25 * w + 1.5 * w * rng.uniform();
        }
        const std::span<const double> xs(x.data(), d);
        const double f0 = omega.sdf(xs);
        double g2 = 0.0;
        bool kink = false;
        for (int i = 0; i < d; ++i) {
            y = x;
            y[i] = x[i] + h * scale;
            const double fp = omega.sdf(std::span<const double>(y.data(), d));
            y[i] = x[i] - h * scale;
            const double fm = omega.sdf(std::span<const double>(y.data(), d));
            const double fwd = (fp - f0) / (h * scale);
            const double bwd = (f0 - fm) / (h * scale);
            if (std::abs(fwd - bwd) > 1e-3) kink = true;
            const double g = 0.5 * (fwd + bwd);
            g2 += g * g;
        }
        if (kink) continue;  // medial axis or corner: rho not differentiable
        worst = std::max(worst, std::abs(std::sqrt(g2) - 1.0));
    }
    return worst;
}

VolumeEstimate mc_volume(const Domain& omega, const McBudget& budget) {
    const int d = omega.dim();
    double box = 1.0;
    for (int i = 0; i < d; ++i) box *= omega.hi()[i] - omega.lo()[i];
    auto m = run_batched(budget, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums s;
        Point x{};
        for (std::uint64_t k = 0; k < n; ++k) {
            for (int i = 0; i < d; ++i) x[i] = omega.lo()[i] + (omega.hi()[i] - omega.lo()[i]) * rng.uniform();
            s.add(omega.contains(std::span<const double>(x.data(), d)) ? 1.0 : 0.0);
        }
        return s;
    });
    return {box * m.mean, box * m.std_err};
}

double perimeter_1d(std::span<const Chord> chords, double alpha) {
    const double k = 1.0 / (alpha * (1.0 - alpha));
    const double e = 1.0 - alpha;
    double sum = 0.0;
    for (std::size_t i = 0; i < chords.size(); ++i) {
        sum += 2.0 * k * std::pow(chords[i].length(), e);
        for (std::size_t j = i + 1; j < chords.size(); ++j) {
            const double a = chords[i].t0, b = chords[i].t1, c = chords[j].t0, dd = chords[j].t1;
            const double pair = k * (std::pow(c - a, e) - std::pow(c - b, e) - std::pow(dd - a, e) + std::pow(dd - b, e));
            sum -= 2.0 * pair;
        }
    }
    return sum;
}

double ball_covariogram_complement(int d, double R, double u) {
    const double vol = ball_volume(d) * std::pow(R, d);
    if (u >= 2.0 * R) return vol;
    if (u <= 0.0) return 0.0;
    switch (d) {
        case 1: return u;
        case 2: return u * std::sqrt(R * R - 0.25 * u * u) + 2.0 * R * R * std::asin(0.5 * u / R);
        case 3: return kPi * R * R * u - kPi * u * u * u / 12.0;
        default: {
            const double half = 0.5 * (d - 1);
            auto f = [&](double x) { return std::pow(R * R - x * x, half); };
            return 2.0 * ball_volume(d - 1) * integrate(f, 0.0, 0.5 * u, {1e-15, 1e-13, 200}).value;
        }
    }
}

namespace {

// Co-area integral int_0^{r_in} r^{-alpha} A(r) dr with r = w^{1/(1-alpha)}.
template <class Area>
double coarea_inverse_distance(double alpha, double r_in, Area&& area) {
    const double e = 1.0 / (1.0 - alpha);
    auto f = [&](double w) {
        const double r = std::pow(w, e);
        return area(r) * e;  // r^{-alpha} dr = e dw
    };
    return integrate(f, 0.0, std::pow(r_in, 1.0 - alpha), {1e-14, 1e-12, 2000}).value;
}

std::optional<double> tube_area_analytic(const Domain& omega, double r) {
    const int d = omega.dim();
    switch (omega.kind()) {
        case DomainKind::Interval: return 2.0;
        case DomainKind::Ball: return sphere_area(d) * std::pow(omega.radius() - r, d - 1);
        case DomainKind::Box:
        case DomainKind::Slab: {
            std::vector<double> L(d);
            for (int i = 0; i < d; ++i) L[i] = omega.hi()[i] - omega.lo()[i] - 2.0 * r;
            return box_surface(L);
        }
        case DomainKind::Smooth: {
            if (omega.id().rfind("rounded_box", 0) != 0 || d > 3) return std::nullopt;
            // Level set is the core box dilated by radius - r, or shrunk past it.
            std::vector<double> L(d);
            for (int i = 0; i < d; ++i) L[i] = omega.hi()[i] - omega.lo()[i] - 2.0 * omega.radius();
            if (r <= omega.radius()) return dilated_box_surface(L, omega.radius() - r);
            for (double& l : L) l -= 2.0 * (r - omega.radius());
            return box_surface(L);
        }
    }
    return std::nullopt;
}

}  // namespace

VolumeEstimate inverse_distance_integral(const Domain& omega, double alpha, const McBudget& budget) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::AlphaOutOfRange, "needs 0 < alpha < 1");
    if (tube_area_analytic(omega, 0.0)) {
        const double v = coarea_inverse_distance(alpha, omega.inradius(), [&](double r) {
            return *tube_area_analytic(omega, std::min(r, omega.inradius()));
        });
        return {v, 1e-12 * v};
    }
    const int d = omega.dim();
    const double vol = omega.volume() ? *omega.volume() : mc_volume(omega, budget).value;
    auto m = run_batched(budget, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums s;
        Point x{};
        for (std::uint64_t k = 0; k < n; ++k) {
            omega.sample_uniform(rng, std::span<double>(x.data(), d));
            s.add(std::pow(omega.sdf(std::span<const double>(x.data(), d)), -alpha));
        }
        return s;
    });
    return {vol * m.mean, vol * m.std_err};
}

PerimeterEstimate fractional_perimeter(const Domain& omega, double alpha, PerimeterMethod method,
                                       const McBudget& budget) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorKind::AlphaOutOfRange, "fractional perimeter of a smooth set is finite only for 0 < alpha < 1");
    require(omega.inradius() > 0.0, ErrorKind::DomainError, "domain has empty interior");
    const int d = omega.dim();
    PerimeterEstimate out;
    out.method = method;
    const double area = sphere_area(d);
    {
        McBudget b = budget;
        b.samples = std::min<std::uint64_t>(budget.samples, 1u << 18);
        out.upper_bound = area / alpha * inverse_distance_integral(omega, alpha, b).value;
    }

    if (method == PerimeterMethod::Quadrature) {
        const double k = 1.0 / (alpha * (1.0 - alpha));
        if (omega.kind() == DomainKind::Interval) {
            out.value = 2.0 * k * std::pow(*omega.volume(), 1.0 - alpha);
            return out;
        }
        if (omega.kind() == DomainKind::Ball) {
            const double R = omega.radius();
            const double vol = *omega.volume();
            const double e = 1.0 / (1.0 - alpha);
            auto f = [&](double w) {
                const double u = std::pow(w, e);
                return ball_covariogram_complement(d, R, u) / u * e;
            };
            auto r = integrate(f, 0.0, std::pow(2.0 * R, 1.0 - alpha), {1e-14, 1e-12, 2000});
            out.value = area * (r.value + vol * std::pow(2.0 * R, -alpha) / alpha);
            out.error = area * r.error;
            return out;
        }
        if ((omega.kind() == DomainKind::Box || omega.kind() == DomainKind::Slab) && d <= 3) {
            // P = int (|Omega| - g(z)) |z|^{-d-alpha} dz with g(z) = prod (L_i - |z_i|)_+;
            // radially the complement is a polynomial up to u* = min L_i / theta_i.
            std::vector<double> L(d);
            for (int i = 0; i < d; ++i) L[i] = omega.hi()[i] - omega.lo()[i];
            const double vol = *omega.volume();
            auto radial = [&](std::span<const double> th) {
                double us = std::numeric_limits<double>::infinity();
                for (int i = 0; i < d; ++i)
                    if (th[i] > 0.0) us = std::min(us, L[i] / th[i]);
                // |Omega| - prod(L_i - u th_i) = sum_k (-1)^{k+1} c_k u^k.
                std::vector<double> poly(d + 1, 0.0);
                poly[0] = 1.0;
                for (int i = 0; i < d; ++i)
                    for (int kk = i + 1; kk >= 0; --kk)
                        poly[kk] = L[i] * poly[kk] - (kk > 0 ? th[i] * poly[kk - 1] : 0.0);
                double v = vol * std::pow(us, -alpha) / alpha;
                for (int kk = 1; kk <= d; ++kk) v -= poly[kk] * std::pow(us, kk - alpha) / (kk - alpha);
                return v;
            };
            const double sym = std::pow(2.0, d);
            if (d == 2) {
                auto f = [&](double phi) {
                    const double th[2] = {std::cos(phi), std::sin(phi)};
                    return radial(th);
                };
                const double pts[] = {0.0, std::atan2(L[1], L[0]), 0.5 * kPi};
                auto r = integrate(f, std::span<const double>(pts), {1e-14, 1e-12, 2000});
                out.value = sym * r.value;
                out.error = sym * r.error;
            } else {
                auto outer = [&](double ct) {
                    auto inner = [&](double phi) {
                        double th[3];
                        orthonormal_frame_3d(ct, phi, th);
                        return radial(th);
                    };
                    return integrate(inner, 0.0, 0.5 * kPi, {1e-13, 1e-10, 400}).value;
                };
                auto r = integrate(outer, 0.0, 1.0, {1e-13, 1e-10, 400});
                out.value = sym * r.value;
                out.error = sym * r.error;
            }
            return out;
        }
        fail(ErrorKind::UnsupportedMethod, "quadrature perimeter covers intervals, balls and boxes (d <= 3)");
    }

    // Line formula: P = 1/2 int_{S^{d-1}} dtheta int_{theta^perp} P^{1D}(Omega cap line) dxi,
    // sampled with theta uniform and xi uniform in the projected bounding ball.
    const double R = omega.bound_radius();
    if (d == 1) {
        std::vector<Chord> c;
        const double x0 = omega.bound_center()[0];
        const double dir = 1.0;
        omega.chords(std::span<const double>(&x0, 1), std::span<const double>(&dir, 1), c);
        out.value = perimeter_1d(c, alpha);
        out.max_weight = out.value;
        out.samples = 1;
        return out;
    }
    const double weight = 0.5 * area * ball_volume(d - 1) * std::pow(R, d - 1);
    out.max_weight = weight * 2.0 * std::pow(2.0 * R, 1.0 - alpha) / (alpha * (1.0 - alpha));
    auto m = run_batched(budget, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums s;
        Point th{}, g{}, x{};
        std::vector<Chord> buf;
        for (std::uint64_t k = 0; k < n; ++k) {
            double nt = 0.0;
            for (int i = 0; i < d; ++i) {
                th[i] = rng.normal();
                nt += th[i] * th[i];
            }
            nt = std::sqrt(nt);
            for (int i = 0; i < d; ++i) th[i] /= nt;
            // Uniform direction in theta^perp, radius with density ~ r^{d-2}.
            double dot = 0.0, ng = 0.0;
            for (int i = 0; i < d; ++i) {
                g[i] = rng.normal();
                dot += g[i] * th[i];
            }
            for (int i = 0; i < d; ++i) {
                g[i] -= dot * th[i];
                ng += g[i] * g[i];
            }
            ng = std::sqrt(ng);
            const double rr = R * std::pow(rng.uniform(), 1.0 / (d - 1));
            for (int i = 0; i < d; ++i) x[i] = omega.bound_center()[i] + rr * g[i] / ng;
            omega.chords(std::span<const double>(x.data(), d), std::span<const double>(th.data(), d), buf);
            s.add(buf.empty() ? 0.0 : weight * perimeter_1d(buf, alpha));
        }
        return s;
    });
    out.value = m.mean;
    out.error = m.std_err;
    out.samples = m.n;
    return out;
}

double exterior_integral(const Domain& omega, std::span<const double> x, double alpha) {
    require(alpha > 0.0 && alpha < 2.0, ErrorKind::AlphaOutOfRange, "needs 0 < alpha < 2");
    require(omega.contains(x), ErrorKind::DomainError, "point must lie inside the domain");
    const int d = omega.dim();
    std::vector<Chord> buf;
    if (d == 1) {
        const double plus = 1.0, minus = -1.0;
        return ray_exterior(omega, x, std::span<const double>(&plus, 1), alpha, buf) +
               ray_exterior(omega, x, std::span<const double>(&minus, 1), alpha, buf);
    }
    if (d == 2) {
        auto f = [&](double phi) {
            const double th[2] = {std::cos(phi), std::sin(phi)};
            return ray_exterior(omega, x, th, alpha, buf);
        };
        std::vector<double> pts;
        for (int i = 0; i <= 16; ++i) pts.push_back(2.0 * kPi * i / 16);
        return integrate(f, std::span<const double>(pts), {1e-14, 1e-10, 4000}).value;
    }
    if (d == 3) {
        auto outer = [&](double ct) {
            auto inner = [&](double phi) {
                double th[3];
                orthonormal_frame_3d(ct, phi, th);
                return ray_exterior(omega, x, th, alpha, buf);
            };
            std::vector<double> pts;
            for (int i = 0; i <= 8; ++i) pts.push_back(2.0 * kPi * i / 8);
            return integrate(inner, std::span<const double>(pts), {1e-13, 1e-9, 2000}).value;
        };
        return integrate(outer, -1.0, 1.0, {1e-13, 1e-9, 400}).value;
    }
    fail(ErrorKind::UnsupportedMethod, "exterior integral by quadrature covers d <= 3");
}

TubeArea surface_measure_tube(const Domain& omega, double r, const McBudget& budget) {
    require(r > 0.0, ErrorKind::DomainError, "offset must be positive");
    const double limit = omega.kind() == DomainKind::Smooth && !tube_area_analytic(omega, 0.0) ? omega.reach()
                                                                                               : omega.inradius();
    if (!(r < limit)) fail(ErrorKind::ReachExceeded, "offset exceeds the reach of the boundary");
    if (auto a = tube_area_analytic(omega, r)) return {*a, 0.0};
    // Shell estimate: |{|rho - r| < h}| / (2h), since |grad rho| = 1.
    const int d = omega.dim();
    const double h = 1e-3 * omega.bound_radius();
    double box = 1.0;
    for (int i = 0; i < d; ++i) box *= omega.hi()[i] - omega.lo()[i];
    auto m = run_batched(budget, [&](RandomStream& rng, std::uint64_t n) {
        BatchSums s;
        Point x{};
        for (std::uint64_t k = 0; k < n; ++k) {
            for (int i = 0; i < d; ++i) x[i] = omega.lo()[i] + (omega.hi()[i] - omega.lo()[i]) * rng.uniform();
            s.add(std::abs(omega.sdf(std::span<const double>(x.data(), d)) - r) < h ? 1.0 : 0.0);
        }
        return s;
    });
    return {box * m.mean / (2.0 * h), box * m.std_err / (2.0 * h)};
}

namespace {

std::vector<double> parse_list(std::string_view s) {
    std::vector<double> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const auto item = s.substr(0, comma);
        double v = 0.0;
        const auto* b = item.data();
        const auto res = std::from_chars(b, b + item.size(), v);
        if (res.ec != std::errc() || res.ptr != b + item.size())
            fail(ErrorKind::InvalidConfig, "not a number: '" + std::string(item) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Domain build_domain(const std::map<std::string, std::string>& kv) {
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto need = [&](const std::string& key) -> const std::string& {
        const auto* v = get(key);
        if (!v) fail(ErrorKind::InvalidConfig, "missing key '" + key + "'");
        return *v;
    };
    auto scalar = [&](const std::string& key) {
        const auto v = parse_list(need(key));
        if (v.size() != 1) fail(ErrorKind::InvalidConfig, "key '" + key + "' expects one number");
        return v[0];
    };
    const std::string& kind = need("kind");
    const int d = get("dim") ? static_cast<int>(scalar("dim")) : 1;
    if (kind == "interval") {
        if (get("lo")) return Domain::interval(scalar("lo"), scalar("hi"));
        return Domain::interval(0.0, scalar("length"));
    }
    if (kind == "ball") {
        const double R = scalar("radius");
        if (get("center")) return Domain::ball(parse_list(need("center")), R);
        return Domain::ball(d, R);
    }
    if (kind == "box") {
        if (get("lo")) return Domain::box(parse_list(need("lo")), parse_list(need("hi")));
        return Domain::cube(d, scalar("side"));
    }
    if (kind == "slab") {
        const double side = get("window") ? scalar("window") : 1.0;
        const std::vector<double> lo(d - 1, 0.0), hi(d - 1, side);
        return Domain::slab(lo, hi, scalar("delta"), scalar("eps"));
    }
    if (kind == "rounded_box") {
        auto h = parse_list(need("half_extents"));
        if (static_cast<int>(h.size()) == 1 && d > 1) h.assign(d, h[0]);
        return Domain::rounded_box(h, scalar("radius"));
    }
    fail(ErrorKind::InvalidConfig, "unknown domain kind '" + kind + "'");
}

}  // namespace

Domain parse_domain_config(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": expected key=value");
        kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
    }
    return build_domain(kv);
}

Domain parse_domain_spec(std::string_view spec) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto c = spec.find(':');
        parts.push_back(spec.substr(0, c));
        if (c == std::string_view::npos) break;
        spec.remove_prefix(c + 1);
    }
    const auto kind = parts[0];
    auto num = [&](std::size_t i) {
        if (i >= parts.size()) fail(ErrorKind::InvalidConfig, "domain shorthand is missing a field");
        const auto v = parse_list(parts[i]);
        if (v.size() != 1) fail(ErrorKind::InvalidConfig, "domain shorthand field is not a single number");
        return v[0];
    };
    if (kind == "interval") {
        if (parts.size() >= 3) return Domain::interval(num(1), num(2));
        return Domain::interval(0.0, num(1));
    }
    if (kind == "ball") return Domain::ball(static_cast<int>(num(1)), num(2));
    if (kind == "box") {
        const int d = static_cast<int>(num(1));
        if (parts.size() < 3) fail(ErrorKind::InvalidConfig, "box shorthand is box:d:side or box:d:L1,L2,..");
        auto L = parse_list(parts[2]);
        if (L.size() == 1) L.assign(d, L[0]);
        if (static_cast<int>(L.size()) != d) fail(ErrorKind::InvalidConfig, "box side list does not match d");
        const std::vector<double> lo(d, 0.0);
        return Domain::box(lo, L);
    }
    if (kind == "slab") {
        const int d = static_cast<int>(num(1));
        const double side = parts.size() > 4 ? num(4) : 1.0;
        const std::vector<double> lo(d - 1, 0.0), hi(d - 1, side);
        return Domain::slab(lo, hi, num(2), num(3));
    }
    if (kind == "rounded_box") {
        const int d = static_cast<int>(num(1));
        if (parts.size() < 4) fail(ErrorKind::InvalidConfig, "rounded_box shorthand is rounded_box:d:r:h1,h2,..");
        auto h = parse_list(parts[3]);
        if (h.size() == 1) h.assign(d, h[0]);
        if (static_cast<int>(h.size()) != d) fail(ErrorKind::InvalidConfig, "half extent list does not match d");
        return Domain::rounded_box(h, num(2));
    }
    fail(ErrorKind::InvalidConfig, "unknown domain shorthand '" + std::string(kind) + "'");
}

}  // namespace heat
