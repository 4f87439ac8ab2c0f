#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "isoprofile/profile.hpp"
#include "isoprofile/report.hpp"
#include "isoprofile/rng.hpp"
#include "isoprofile/roots.hpp"
#include "isoprofile/space_forms.hpp"

/// \file
/// Flat (delta = 0) convex bodies in the plane with known isoperimetric
/// competitor families, plus Monte-Carlo perimeter/volume estimators used
/// as an independent cross-check of the analytic profiles.

namespace isoprofile {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Concrete planar convex body.  The boundary passes through the canonical
/// base point returned by base_point(), which is where the small-ball
/// estimators sample by default.
struct Body2D {
    enum class Kind { half_plane, unit_square, disk, wedge, slab };

    Kind kind;
    double param = 0.0;  // disk radius, wedge angle, or slab width

    static Body2D half_plane() { return {Kind::half_plane, 0.0}; }
    static Body2D unit_square() { return {Kind::unit_square, 0.0}; }
    static Body2D disk(double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("Body2D: disk radius must be positive");
        return {Kind::disk, radius};
    }
    static Body2D wedge(double angle) {
        if (!(angle > 0.0 && angle <= pi))
            throw std::invalid_argument("Body2D: wedge angle must lie in (0, pi]");
        return {Kind::wedge, angle};
    }
    static Body2D slab(double width) {
        if (!(width > 0.0)) throw std::invalid_argument("Body2D: slab width must be positive");
        return {Kind::slab, width};
    }

    /// Area of the body; +infinity for the unbounded variants.
    double area() const {
        switch (kind) {
            case Kind::unit_square: return 1.0;
            case Kind::disk: return pi * param * param;
            default: return std::numeric_limits<double>::infinity();
        }
    }

    bool contains(Point2 p) const {
        switch (kind) {
            case Kind::half_plane: return p.y > 0.0;
            case Kind::unit_square: return p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0;
            case Kind::disk: return p.x * p.x + p.y * p.y < param * param;
            case Kind::wedge: {
                const double ang = std::atan2(p.y, p.x);
                return ang > 0.0 && ang < param && (p.x != 0.0 || p.y != 0.0);
            }
            case Kind::slab: return p.y > 0.0 && p.y < param;
        }
        return false;
    }

    /// Canonical boundary point: the wedge vertex / square corner at the
    /// origin, the wall point (0,0) for half-plane and slab, (R,0) for the disk.
    Point2 base_point() const {
        if (kind == Kind::disk) return {param, 0.0};
        return {0.0, 0.0};
    }
};

namespace detail {

/// Cap of the unit disk cut by a circular arc of radius rho meeting the
/// boundary circle orthogonally: arc length and cap area in closed form.
/// The cap area is strictly increasing in rho and sweeps (0, pi/2).
inline double disk_cap_area(double rho) {
    return std::atan(rho) + rho * rho * std::atan(1.0 / rho) - rho;
}

inline double disk_cap_arc(double rho) { return 2.0 * rho * std::atan(1.0 / rho); }

/// Unit-disk profile for volume u in [0, pi/2] (the smaller side).
inline double unit_disk_profile(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 0.5 * pi - 1e-13) return 2.0;  // the family degenerates to a diameter
    // Solve cap_area(rho) = u for rho, parametrized by phi = atan(rho) for a
    // bounded bracket.
    const double phi = find_root(
        [&](double p) { return disk_cap_area(std::tan(p)) - u; }, 1e-12, 0.5 * pi - 1e-12, 1e-13);
    return disk_cap_arc(std::tan(phi));
}

}  // namespace detail

/// Least relative perimeter at volume V over the body's known competitor
/// family:
///   wedge      vertex-centered arcs, P = sqrt(2 theta V)
///   square     corner quarter-circles, unit segments, complement arcs
///   disk       arcs orthogonal to the boundary circle (diameter limit)
///   half-plane boundary-centered half-disks, P = sqrt(2 pi V)
///   slab       half-disks on one wall vs. two wall-to-wall segments
inline double body_profile(const Body2D& body, double V) {
    if (!(V >= 0.0)) throw std::domain_error("body_profile: V must be >= 0");
    const double A = body.area();
    if (V > A * (1.0 + 1e-12)) throw std::domain_error("body_profile: V exceeds the body's area");
    switch (body.kind) {
        case Body2D::Kind::half_plane: return std::sqrt(2.0 * pi * V);
        case Body2D::Kind::wedge: return std::sqrt(2.0 * body.param * V);
        case Body2D::Kind::slab:
            return std::min(std::sqrt(2.0 * pi * V), 2.0 * body.param);
        case Body2D::Kind::unit_square: {
            // corner quarter-circle on the smaller side vs. a unit segment;
            // writing it through min(V, 1-V) keeps the symmetry exact
            const double u = std::min(V, A - V);
            return std::min(std::sqrt(pi * u), 1.0);
        }
        case Body2D::Kind::disk: {
            const double R = body.param;
            const double u = std::min(V, A - V) / (R * R);
            return R * detail::unit_disk_profile(u);
        }
    }
    throw std::logic_error("body_profile: unknown body");
}

namespace detail {

/// Volumes where the winning competitor changes; the profile has a slope
/// kink there.
inline std::vector<double> profile_breakpoints(const Body2D& body) {
    switch (body.kind) {
        case Body2D::Kind::unit_square:
            // quarter-circle gives way to the unit segment at sqrt(pi V) = 1
            return {1.0 / pi, 1.0 - 1.0 / pi};
        case Body2D::Kind::slab: {
            // half-disk gives way to the double segment at sqrt(2 pi V) = 2 w
            const double w = body.param;
            return {2.0 * w * w / pi};
        }
        default:
            return {};
    }
}

}  // namespace detail

/// Sample the analytic profile into a ProfileCurve.  Volumes are clustered
/// near the endpoints where the profile has infinite slope, and each
/// competitor-family breakpoint is resolved by a pair of samples straddling
/// it at micro distance, so the interpolant reproduces the slope kink
/// instead of smearing it across a cell (a C1 cubic cannot represent a
/// corner inside a cell without spurious curvature).
inline ProfileCurve body_profile_curve(const Body2D& body, double v_max, int grid) {
    if (grid < 16) throw std::invalid_argument("body_profile_curve: grid must be >= 16");
    const double A = body.area();
    const bool bounded = std::isfinite(A);
    const double v_top = bounded ? A : v_max;
    if (!bounded && !(v_max > 0.0))
        throw std::invalid_argument("body_profile_curve: v_max required for unbounded bodies");
    std::vector<double> vs;
    vs.reserve(grid + 8);
    for (int i = 0; i < grid; ++i) {
        const double s = double(i) / (grid - 1);
        const double frac =
            bounded ? 0.5 * (1.0 - std::cos(pi * s)) : 1.0 - std::cos(0.5 * pi * s);
        vs.push_back(v_top * frac);
    }
    // Straddling pair plus buffer nodes: the pair pins the corner, and the
    // buffers confine the corner's influence on estimated slopes to cells
    // of micro width.  The spacing trades the width of the corner cell
    // against secant rounding noise (ulp / width) in the micro cells.
    for (double b : detail::profile_breakpoints(body)) {
        if (b > 0.0 && b < v_top) {
            for (double off : {-2e-6, -1e-6, 1e-6, 2e-6}) vs.push_back(b + off * v_top);
        }
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end(),
                         [&](double a, double b) { return b - a < 1e-7 * v_top; }),
             vs.end());

    std::vector<double> ps(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) ps[i] = body_profile(body, vs[i]);
    vs.front() = 0.0;
    ps.front() = 0.0;
    if (bounded) {
        vs.back() = A;
        ps.back() = 0.0;
    }
    std::optional<double> total;
    if (bounded) total = A;
    return ProfileCurve(2, total, std::move(vs), std::move(ps));
}

/// Monte-Carlo estimate with the usual binomial standard error.
struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Fraction of hits scaled by `scale`.  Sampling is counter-based and
/// sharded into independent substreams; the pooled count is deterministic
/// for a given (seed, stream, shards).
template <typename Hit>
MCEstimate mc_fraction(Hit&& hit, double scale, long samples, std::uint64_t seed,
                       std::uint64_t stream, int shards = 1) {
    if (samples < 1000) throw std::invalid_argument("mc: need at least 10^3 samples");
    if (shards < 1 || samples / shards < 1)
        throw std::invalid_argument("mc: shards must be >= 1 and not exceed the sample count");
    const long per_shard = samples / shards;
    long total = 0, count = 0;
    for (int s = 0; s < shards; ++s) {
        const CounterRng rng(seed, stream * 0x10001ull + s);
        for (long i = 0; i < per_shard; ++i) count += hit(rng, static_cast<std::uint64_t>(i));
        total += per_shard;
    }
    const double p = double(count) / double(total);
    MCEstimate est;
    est.value = scale * p;
    est.std_error = scale * std::sqrt(std::max(p * (1.0 - p), 0.0) / double(total));
    est.samples = total;
    est.seed = seed;
    return est;
}

}  // namespace detail

/// Monte-Carlo quantities of the ball B_r about a boundary point x:
///   perimeter  P(r) = |dB_r inside the body| (angular sampling)
///   volume     V(r) = |B_r intersect body|   (rejection in B_r)
///   cone_volume Vtilde(r) = area of the cone over dB_r with vertex x.
/// The three use independent substreams so that the cone relation
/// P = (n+1) Vtilde / r stays a falsifiable statistical check.
struct ConeQuantities {
    MCEstimate perimeter;
    MCEstimate volume;
    MCEstimate cone_volume;
};

inline ConeQuantities cone_quantities(const Body2D& body, Point2 x, double r, long samples,
                                      std::uint64_t seed, int shards = 1) {
    if (!(r > 0.0)) throw std::invalid_argument("cone_quantities: degenerate radius");
    auto on_sphere = [&](const CounterRng& rng, std::uint64_t i) {
        const double theta = 2.0 * pi * rng.uniform(2 * i);
        return body.contains({x.x + r * std::cos(theta), x.y + r * std::sin(theta)}) ? 1 : 0;
    };
    auto in_ball = [&](const CounterRng& rng, std::uint64_t i) {
        const double rad = r * std::sqrt(rng.uniform(2 * i));
        const double theta = 2.0 * pi * rng.uniform(2 * i + 1);
        return body.contains({x.x + rad * std::cos(theta), x.y + rad * std::sin(theta)}) ? 1 : 0;
    };
    ConeQuantities q;
    q.perimeter = detail::mc_fraction(on_sphere, 2.0 * pi * r, samples, seed, 0, shards);
    q.volume = detail::mc_fraction(in_ball, pi * r * r, samples, seed, 1, shards);
    // Cone over the arc: area = (r^2 / 2) * |angular set|.
    q.cone_volume = detail::mc_fraction(on_sphere, pi * r * r, samples, seed, 2, shards);
    return q;
}

/// Verify P(r) = (n+1) Vtilde(r) / r within k_sigma combined standard
/// errors.  vtilde_scale is a fault-injection hook for negative controls.
inline ComparisonReport check_cone_relation(const Body2D& body, Point2 x, double r, long samples,
                                            std::uint64_t seed, double k_sigma,
                                            double vtilde_scale = 1.0) {
    const ConeQuantities q = cone_quantities(body, x, r, samples, seed);
    constexpr int n = 1;  // planar bodies
    const double predicted = (n + 1) * vtilde_scale * q.cone_volume.value / r;
    const double sigma = std::hypot(q.perimeter.std_error,
                                    (n + 1) * vtilde_scale * q.cone_volume.std_error / r);
    const double margin = k_sigma * sigma - std::abs(q.perimeter.value - predicted);
    ComparisonReport rep = make_report(margin, r, std::abs(margin), 0.0);
    rep.equality_detected = rep.passed;
    return rep;
}

/// Small-volume comparison at a locally convex boundary point:
/// P(r) <= d_n V(r)^{n/(n+1)} + 3 sigma for each r, with d_n the flat
/// half-space constant.
inline ComparisonReport check_small_volume_bound(const Body2D& body, Point2 x,
                                                 std::span<const double> r_values, long samples,
                                                 std::uint64_t seed) {
    if (r_values.empty())
        throw std::invalid_argument("check_small_volume_bound: need at least one radius");
    constexpr int n = 1;
    const double dn = half_space_constant(n + 1);
    double worst = std::numeric_limits<double>::infinity();
    double worst_loc = r_values[0];
    bool equality = true;
    for (double r : r_values) {
        const ConeQuantities q = cone_quantities(body, x, r, samples, seed);
        const double v = q.volume.value;
        if (!(v > 0.0)) throw std::domain_error("check_small_volume_bound: empty ball sample");
        const double bound = dn * std::pow(v, double(n) / (n + 1));
        // Delta-method propagation of the volume error through V^{n/(n+1)}.
        const double dbound_dv = dn * (double(n) / (n + 1)) * std::pow(v, -1.0 / (n + 1));
        const double sigma = std::hypot(q.perimeter.std_error, dbound_dv * q.volume.std_error);
        const double slack = bound + 3.0 * sigma - q.perimeter.value;
        if (slack < worst) {
            worst = slack;
            worst_loc = r;
        }
        if (std::abs(bound - q.perimeter.value) > 3.0 * sigma) equality = false;
    }
    ComparisonReport rep = make_report(worst, worst_loc, std::abs(worst), 0.0);
    rep.equality_detected = rep.passed && equality;
    return rep;
}

}  // namespace isoprofile
