#pragma once

// Bounded domains in R^d described by a signed distance rho (> 0 inside).

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heatcontent/parallel.hpp"
#include "heatcontent/random.hpp"

namespace heat {

inline constexpr int kMaxDim = 8;
using Point = std::array<double, kMaxDim>;

enum class DomainKind { Interval, Ball, Box, Slab, Smooth };

std::string_view to_string(DomainKind kind) noexcept;

/// Signed distance: positive inside, negative outside. Must be 1-Lipschitz.
using SignedDistance = std::function<double(std::span<const double>)>;

/// Parameter range [t0, t1] of a line x + t*dir inside the domain.
struct Chord {
    double t0 = 0.0;
    double t1 = 0.0;
    double length() const { return t1 - t0; }
};

class Domain {
public:
    static Domain interval(double a, double b);
    static Domain ball(std::span<const double> center, double radius);
    static Domain ball(int d, double radius);
    static Domain box(std::span<const double> lo, std::span<const double> hi);
    /// Cube [0, side]^d.
    static Domain cube(int d, double side);
    /// Source region K x (0, delta) with K = prod [window_lo, window_hi] in
    /// R^{d-1}; the target is the layer -eps < x_d < 0 (unbounded across).
    static Domain slab(std::span<const double> window_lo, std::span<const double> window_hi, double delta,
                       double eps);
    /// Box with half extents h (centred at 0) dilated by radius r: an exact
    /// signed distance with a C^{1,1} boundary (a stadium when some h_i = 0).
    static Domain rounded_box(std::span<const double> half_extents, double radius);
    /// Generic smooth domain; `reach` bounds tubular offsets, `inradius` is the
    /// largest inside distance. Volume/surface optional when not known.
    static Domain smooth(int d, SignedDistance sdf, std::span<const double> lo, std::span<const double> hi,
                         double reach, double inradius, std::optional<double> volume = std::nullopt,
                         std::optional<double> surface = std::nullopt, std::string name = "smooth");

    DomainKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::string& id() const { return id_; }

    std::optional<double> volume() const { return volume_; }
    std::optional<double> surface() const { return surface_; }
    double inradius() const { return inradius_; }
    double reach() const { return reach_; }

    /// Bounding box.
    std::span<const double> lo() const { return {lo_.data(), static_cast<std::size_t>(dim_)}; }
    std::span<const double> hi() const { return {hi_.data(), static_cast<std::size_t>(dim_)}; }
    /// Centre and radius of a ball containing the domain.
    std::span<const double> bound_center() const { return {bc_.data(), static_cast<std::size_t>(dim_)}; }
    double bound_radius() const { return br_; }

    double sdf(std::span<const double> x) const;
    bool contains(std::span<const double> x) const { return sdf(x) > 0.0; }

    /// Uniform point in the domain (exact for ball/box/slab, rejection otherwise).
    void sample_uniform(RandomStream& rng, std::span<double> out) const;

    /// Intervals of {t : x + t dir in domain}, sorted, where |dir| = 1.
    void chords(std::span<const double> x, std::span<const double> dir, std::vector<Chord>& out) const;

    /// Ball specific: radius and centre.
    double radius() const { return radius_; }
    std::span<const double> center() const { return bound_center(); }
    /// Slab specific.
    double slab_delta() const { return delta_; }
    double slab_eps() const { return eps_; }
    double slab_window_area() const;

    /// Tubular neighbourhoods: inner Omega_eps = {x in Omega: rho < eps}, outer
    /// Omega^delta = {x outside: -rho < delta}.
    bool in_inner_tube(std::span<const double> x, double eps) const;
    bool in_outer_tube(std::span<const double> x, double delta) const;

private:
    DomainKind kind_ = DomainKind::Ball;
    int dim_ = 1;
    std::string id_;
    Point lo_{}, hi_{}, bc_{};
    double br_ = 0.0;
    double radius_ = 0.0;
    double delta_ = 0.0;
    double eps_ = 0.0;
    double reach_ = 0.0;
    double inradius_ = 0.0;
    std::optional<double> volume_;
    std::optional<double> surface_;
    Point extra_{};  // half extents for rounded boxes
    std::shared_ptr<const SignedDistance> sdf_fn_;
};

/// Finite-difference |grad rho| at n random points of the bounding box away
/// from kinks; returns the worst deviation from 1.
double eikonal_defect(const Domain& omega, int n, RandomStream& rng, double h = 1e-6);

struct VolumeEstimate {
    double value = 0.0;
    double std_err = 0.0;
};

/// Hit-or-miss volume in the bounding box.
VolumeEstimate mc_volume(const Domain& omega, const McBudget& budget);

enum class PerimeterMethod { Quadrature, MonteCarlo };

struct PerimeterEstimate {
    double value = 0.0;
    double error = 0.0;
    PerimeterMethod method = PerimeterMethod::Quadrature;
    /// (|S^{d-1}| / alpha) int_Omega rho^{-alpha}: an upper bound for P_alpha.
    double upper_bound = 0.0;
    /// Largest single-sample weight of the line estimator (bounded by design).
    double max_weight = 0.0;
    std::uint64_t samples = 0;
};

/// P_alpha(Omega) = int_Omega int_{Omega^c} |x - y|^{-d-alpha} dy dx, 0 < alpha < 1.
PerimeterEstimate fractional_perimeter(const Domain& omega, double alpha, PerimeterMethod method,
                                       const McBudget& budget = {});

/// One-dimensional perimeter of a finite union of disjoint intervals.
double perimeter_1d(std::span<const Chord> chords, double alpha);

/// |Omega| - |Omega cap (Omega + u e)| for a ball of radius R in R^d.
double ball_covariogram_complement(int d, double R, double u);

/// int_Omega rho^{-alpha} dx (closed form for balls and boxes, MC otherwise).
VolumeEstimate inverse_distance_integral(const Domain& omega, double alpha, const McBudget& budget = {});

/// int_{Omega^c} |x - y|^{-d-alpha} dy at a point x in Omega, by quadrature
/// over directions of the ray exit structure.
double exterior_integral(const Domain& omega, std::span<const double> x, double alpha);

/// H^{d-1} of the level set {rho = r}.
struct TubeArea {
    double value = 0.0;
    double error = 0.0;
};

TubeArea surface_measure_tube(const Domain& omega, double r, const McBudget& budget = {});

/// Parses "kind=...\nkey=value" text (# comments allowed).
Domain parse_domain_config(std::string_view text);

/// Parses shorthand such as "ball:2:1", "box:2:1", "interval:0:1",
/// "slab:2:1:1:1" (d:delta:eps:window side), "rounded_box:2:0.2:0.5,0.3".
Domain parse_domain_spec(std::string_view spec);

}  // namespace heat
