#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "isoprofile/profile.hpp"
#include "isoprofile/quadrature.hpp"
#include "isoprofile/roots.hpp"

/// \file
/// Model spaces of constant curvature delta and their isoperimetric
/// profiles.  The model region is either the full simply connected space
/// form or its half bounded by a totally geodesic hypersurface; minimizers
/// are geodesic balls (half-balls centered at the boundary in the half
/// model), so volume and perimeter reduce to one-dimensional integrals of
/// the generalized sine S_delta.

namespace isoprofile {

inline constexpr double pi = std::numbers::pi_v<double>;

/// Surface measure of the unit n-sphere: 2 pi^{(n+1)/2} / Gamma((n+1)/2).
inline double sphere_area(int n) {
    if (n < 0) throw std::invalid_argument("sphere_area: n must be >= 0");
    return 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

/// Euclidean isoperimetric constant gamma_d = omega_n / B_d^{n/(n+1)} with
/// B_d = omega_n / (n+1) the unit-ball volume (d = n+1).
inline double gamma_const(int d) {
    if (d < 2) throw std::invalid_argument("gamma_const: dimension must be >= 2");
    const int n = d - 1;
    const double omega_n = sphere_area(n);
    return omega_n / std::pow(omega_n / d, double(n) / d);
}

/// Constant in the flat half-space profile I(V) = d_n V^{n/(n+1)}.
inline double half_space_constant(int d) {
    return std::pow(2.0, -1.0 / d) * gamma_const(d);
}

/// Generalized sine: solution of s'' + delta s = 0 with s(0)=0, s'(0)=1.
inline double s_delta(double delta, double t) {
    if (!(t >= 0.0)) throw std::domain_error("s_delta: t must be >= 0");
    if (delta > 0.0 && t > pi / std::sqrt(delta) * (1.0 + 1e-12))
        throw std::domain_error("s_delta: t beyond pi/sqrt(delta)");
    const double u = delta * t * t;
    if (std::abs(u) < 1e-8)
        return t * (1.0 - u / 6.0 + u * u / 120.0);  // series, avoids cancellation
    if (delta > 0.0) {
        const double k = std::sqrt(delta);
        return std::sin(k * t) / k;
    }
    const double k = std::sqrt(-delta);
    return std::sinh(k * t) / k;
}

/// Derivative of s_delta in t.
inline double c_delta(double delta, double t) {
    if (!(t >= 0.0)) throw std::domain_error("c_delta: t must be >= 0");
    if (delta > 0.0 && t > pi / std::sqrt(delta) * (1.0 + 1e-12))
        throw std::domain_error("c_delta: t beyond pi/sqrt(delta)");
    const double u = delta * t * t;
    if (std::abs(u) < 1e-8)
        return 1.0 - u / 2.0 + u * u / 24.0;
    if (delta > 0.0) return std::cos(std::sqrt(delta) * t);
    return std::cosh(std::sqrt(-delta) * t);
}

/// Model region in the simply connected space form of curvature `curvature`:
/// the half model (half = true) is bounded by a totally geodesic
/// hypersurface, the full model is the whole space form.
struct SpaceForm {
    int ambient_dim;
    double curvature;
    bool half;

    SpaceForm(int dim, double delta, bool half_model)
        : ambient_dim(dim), curvature(delta), half(half_model) {
        if (dim < 2) throw std::invalid_argument("SpaceForm: ambient_dim must be >= 2");
    }

    int n() const { return ambient_dim - 1; }
    double boundary_factor() const { return half ? 0.5 : 1.0; }
    bool bounded() const { return curvature > 0.0; }

    /// Largest geodesic radius: pi/sqrt(delta) for delta > 0, unbounded otherwise.
    double r_max() const {
        if (curvature <= 0.0)
            throw std::domain_error("SpaceForm: radius unbounded for curvature <= 0");
        return pi / std::sqrt(curvature);
    }
};

/// Volume of the geodesic (half-)ball of radius r in the model.
inline double model_volume_at_radius(const SpaceForm& space, double r) {
    const double c = space.boundary_factor() * sphere_area(space.n());
    return c * integrate([&](double t) { return std::pow(s_delta(space.curvature, t), space.n()); },
                         0.0, r);
}

/// Perimeter (relative to the model) of the geodesic (half-)ball of radius r.
inline double model_perimeter_at_radius(const SpaceForm& space, double r) {
    const double c = space.boundary_factor() * sphere_area(space.n());
    return c * std::pow(s_delta(space.curvature, r), space.n());
}

/// Total volume; finite exactly when curvature > 0.  For the half model it
/// equals half the volume of the sphere of radius 1/sqrt(delta).
inline std::optional<double> model_total_volume(const SpaceForm& space) {
    if (!space.bounded()) return std::nullopt;
    return model_volume_at_radius(space, space.r_max());
}

/// Invert V(r) = V by bracketed root finding (V is strictly increasing).
inline double model_radius_for_volume(const SpaceForm& space, double V) {
    if (!(V >= 0.0)) throw std::domain_error("model_radius_for_volume: V must be >= 0");
    if (V == 0.0) return 0.0;
    double hi;
    if (space.bounded()) {
        hi = space.r_max();
        const double vol = model_volume_at_radius(space, hi);
        if (V > vol * (1.0 + 1e-12))
            throw std::domain_error("model_radius_for_volume: V exceeds total volume");
        if (V >= vol) return hi;
    } else {
        hi = 1.0;
        while (model_volume_at_radius(space, hi) < V) hi *= 2.0;
    }
    return find_root([&](double r) { return model_volume_at_radius(space, r) - V; }, 0.0, hi,
                     1e-14);
}

/// Exact profile value I(V): inverts the radius and evaluates the perimeter
/// formula directly (no interpolation).
inline double model_profile_at(const SpaceForm& space, double V) {
    return model_perimeter_at_radius(space, model_radius_for_volume(space, V));
}

namespace detail {

/// Radius grid clustered where the profile needs resolution: near r = 0
/// always, and near r_max too when the model closes up (delta > 0).
inline std::vector<double> radius_grid(double r_top, bool closed, int grid_size) {
    std::vector<double> r(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        const double s = double(i) / (grid_size - 1);
        const double angle = closed ? pi * s : 0.5 * pi * s;
        r[i] = r_top * (1.0 - std::cos(angle)) / (closed ? 2.0 : 1.0);
    }
    r.front() = 0.0;
    r.back() = r_top;
    return r;
}

}  // namespace detail

/// Parametric sweep of the model profile.  For curvature <= 0 a finite
/// volume cutoff v_max must be supplied; for curvature > 0 the sweep covers
/// the whole model and v_max is ignored.
inline ProfileCurve model_profile(const SpaceForm& space, std::optional<double> v_max,
                                  int grid_size) {
    if (grid_size < 16)
        throw std::invalid_argument(
            "model_profile: grid too small to resolve the perimeter maximum (need >= 16)");
    double r_top;
    if (space.bounded()) {
        r_top = space.r_max();
    } else {
        if (!v_max || !(*v_max > 0.0))
            throw std::invalid_argument("model_profile: finite v_max required for curvature <= 0");
        r_top = model_radius_for_volume(space, *v_max);
    }

    const std::vector<double> r = detail::radius_grid(r_top, space.bounded(), grid_size);
    std::vector<double> volumes(grid_size), perimeters(grid_size);
    double acc = 0.0, comp = 0.0;  // Kahan-compensated cumulative volume
    volumes[0] = 0.0;
    perimeters[0] = 0.0;
    const double c = space.boundary_factor() * sphere_area(space.n());
    for (int i = 1; i < grid_size; ++i) {
        const double seg =
            c * integrate([&](double t) { return std::pow(s_delta(space.curvature, t), space.n()); },
                          r[i - 1], r[i], 1e-15 + 1e-14 * acc);
        const double y = seg - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        volumes[i] = acc;
        perimeters[i] = c * std::pow(s_delta(space.curvature, r[i]), space.n());
    }
    if (space.bounded()) perimeters[grid_size - 1] = 0.0;  // S_delta(r_max) = 0 exactly

    // Sub-resolution cells next to a closed end can round to identical
    // cumulative volumes; keep a strictly increasing subsequence that
    // retains the final sample.
    std::vector<std::size_t> keep{0};
    for (int i = 1; i < grid_size; ++i)
        if (volumes[i] > volumes[keep.back()]) keep.push_back(i);
    if (keep.back() != static_cast<std::size_t>(grid_size - 1)) {
        while (keep.size() > 1 && volumes[grid_size - 1] <= volumes[keep.back()]) keep.pop_back();
        keep.push_back(grid_size - 1);
    }
    std::vector<double> kept_v(keep.size()), kept_p(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        kept_v[i] = volumes[keep[i]];
        kept_p[i] = perimeters[keep[i]];
    }

    std::optional<double> total;
    if (space.bounded()) total = kept_v.back();
    return ProfileCurve(space.ambient_dim, total, std::move(kept_v), std::move(kept_p));
}

/// Probability-measure view h(beta) = I(beta vol) / vol on the sample grid.
inline NormalizedProfile normalize(const ProfileCurve& curve) {
    if (!curve.total_volume)
        throw std::invalid_argument("normalize: curve has unbounded total volume");
    const double vol = *curve.total_volume;
    std::vector<double> betas(curve.volumes.size()), h(curve.volumes.size());
    for (std::size_t i = 0; i < curve.volumes.size(); ++i) {
        betas[i] = curve.volumes[i] / vol;
        h[i] = curve.perimeters[i] / vol;
    }
    betas.front() = 0.0;
    betas.back() = 1.0;
    h.front() = 0.0;
    h.back() = 0.0;
    return NormalizedProfile(std::move(betas), std::move(h));
}

}  // namespace isoprofile
