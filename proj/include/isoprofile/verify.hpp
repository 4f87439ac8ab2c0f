#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "isoprofile/bodies.hpp"
#include "isoprofile/bounds.hpp"
#include "isoprofile/comparison.hpp"
#include "isoprofile/rng.hpp"
#include "isoprofile/space_forms.hpp"

/// \file
/// End-to-end verification suite: every headline identity and bound the
/// library claims, checked at fixed tolerances against closed forms,
/// independent oracles, and Monte-Carlo cross-checks.  Deterministic for a
/// given seed.

namespace isoprofile {

struct CheckOutcome {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

inline ProfileCurve verification_model(int d, double delta, int grid) {
    const SpaceForm space(d, delta, true);
    std::optional<double> v_max;
    if (delta <= 0.0) v_max = 10.0 * model_volume_at_radius(space, 1.0);
    return model_profile(space, v_max, grid);
}

inline double verification_slope(int d) {
    const int n = d - 1;
    return std::pow(2.0, -1.0 / n) * std::pow(gamma_const(d), double(d) / n);
}

}  // namespace detail

/// Check 1: the n = 1 profiles satisfy I(V)^2 = V (2 pi - delta V).
inline CheckOutcome check_n1_closed_form() {
    double worst = 0.0;
    for (double delta : {-1.0, 0.0, 1.0}) {
        const ProfileCurve curve = detail::verification_model(2, delta, 401);
        const std::size_t n = curve.volumes.size();
        for (int k = 1; k <= 200; ++k) {
            const std::size_t i = k * (n - 1) / 200;
            const double V = curve.volumes[i];
            if (V <= 0.0) continue;
            const double rhs = V * (2.0 * pi - delta * V);
            const double I2 = curve.perimeters[i] * curve.perimeters[i];
            if (rhs > 0.0) worst = std::max(worst, std::abs(I2 - rhs) / rhs);
        }
    }
    return {1, "n=1 closed form I^2 = V(2pi - delta V)", worst <= 1e-8,
            detail::fmt("max rel err %.3e (tol 1e-8)", worst)};
}

/// Check 2: small-volume asymptotic constant at V = 1e-8.
inline CheckOutcome check_asymptotic_constant() {
    double lo = 1.0, hi = 1.0;
    for (int d : {2, 3}) {
        const double dn = half_space_constant(d);
        for (double delta : {-1.0, 0.0, 1.0}) {
            const SpaceForm space(d, delta, true);
            const double V = 1e-8;
            const double ratio =
                model_profile_at(space, V) / (dn * std::pow(V, double(d - 1) / d));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    const bool ok = lo >= 0.999 && hi <= 1.001;
    return {2, "small-volume asymptotic constant", ok,
            detail::fmt("ratio range [%.6f, %.6f] (want within [0.999, 1.001])", lo, hi)};
}

/// Check 3: equality of the differential inequality on the models.
inline CheckOutcome check_equality_differential_inequality() {
    double worst = 0.0;
    bool all_equal = true;
    for (int d : {2, 3}) {
        for (double delta : {-1.0, 0.0, 1.0}) {
            const RenormalizedCurve Y =
                renormalize(detail::verification_model(d, delta, 2049), d - 1);
            const ComparisonReport rep = check_differential_inequality(Y, d - 1, delta, 1e-4);
            all_equal = all_equal && rep.passed && rep.equality_detected;
            worst = std::max(worst, std::abs(rep.worst_margin));
        }
    }
    return {3, "differential inequality holds with equality on models", all_equal,
            detail::fmt("max |margin| %.3e (tol 1e-4)", worst)};
}

/// Check 4: IVP from the small-volume slope reproduces the models.
inline CheckOutcome check_ivp_comparison() {
    double worst = 0.0;
    for (int d : {2, 3}) {
        const SpaceForm space(d, 1.0, true);
        const double vol = *model_total_volume(space);
        const IvpResult r =
            solve_ivp(OdeProblem(d, 1.0), detail::verification_slope(d), 0.9 * vol, 257);
        for (std::size_t i = 0; i < r.curve.x.size(); ++i) {
            const double ym = std::pow(model_profile_at(space, r.curve.x[i]), double(d) / (d - 1));
            worst = std::max(worst, std::abs(r.curve.y[i] - ym));
        }
    }
    return {4, "IVP comparison reproduces renormalized models", worst <= 1e-6,
            detail::fmt("sup err %.3e (tol 1e-6)", worst)};
}

/// Check 5: BVP shooting against the alpha = 2 closed form and the
/// d = 3 model.
inline CheckOutcome check_bvp_shooting() {
    double worst2 = 0.0;
    {
        const RenormalizedCurve g = solve_bvp(OdeProblem(2.0, 1.0), 2.0 * pi, 257);
        for (std::size_t i = 0; i < g.x.size(); ++i)
            worst2 = std::max(worst2, std::abs(g.y[i] - g.x[i] * (2.0 * pi - g.x[i])));
    }
    double worst3 = 0.0;
    {
        const SpaceForm space(3, 1.0, true);
        const double vol = *model_total_volume(space);
        const RenormalizedCurve g = solve_bvp(OdeProblem(3.0, 1.0), vol, 257);
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double ym = std::pow(model_profile_at(space, g.x[i]), 1.5);
            worst3 = std::max(worst3, std::abs(g.y[i] - ym));
        }
    }
    const bool ok = worst2 <= 1e-8 && worst3 <= 1e-6;
    return {5, "BVP shooting matches closed form and d=3 model", ok,
            detail::fmt("alpha=2 sup err %.3e (tol 1e-8), alpha=3 sup err %.3e (tol 1e-6)",
                        worst2, worst3)};
}

/// Check 6: flat convex bodies sit below the half-plane profile,
/// analytically at 1e-10 and by Monte-Carlo at 3 sigma.
inline CheckOutcome check_flat_upper_bound(long samples, std::uint64_t seed) {
    bool ok = true;
    double worst = 1e300;
    const std::vector<Body2D> bodies{Body2D::unit_square(), Body2D::disk(1.0),
                                     Body2D::wedge(pi / 2), Body2D::slab(1.0)};
    for (const Body2D& body : bodies) {
        const ProfileCurve curve = body_profile_curve(body, 3.0, 513);
        const ComparisonReport rep = compare_upper(curve, 1, 0.0, 1e-10);
        ok = ok && rep.passed;
        worst = std::min(worst, rep.worst_margin);
        const std::vector<double> rs{0.4};
        const ComparisonReport mc = check_small_volume_bound(body, body.base_point(), rs,
                                                             samples, seed);
        ok = ok && mc.passed;
    }
    return {6, "flat bodies sit below the half-plane profile (analytic + MC)", ok,
            detail::fmt("worst analytic margin %.3e (tol 1e-10), MC at 3 sigma", worst)};
}

/// Check 7: Levy-Gromov equality on the model and the perturbed
/// negative control.
inline CheckOutcome check_levy_gromov() {
    const NormalizedProfile h = normalize(detail::verification_model(2, 1.0, 2049));
    const ComparisonReport self = compare_lower_LG(h, 1, 1.0, 1e-8);
    std::vector<double> halved = h.values;
    for (double& v : halved) v *= 0.5;
    const ComparisonReport bad = compare_lower_LG(NormalizedProfile(h.betas, halved), 1, 1.0,
                                                  1e-8);
    const bool ok = self.passed && self.equality_detected && !bad.passed &&
                    std::abs(bad.worst_margin + 0.25) <= 1e-6 &&
                    std::abs(bad.worst_location - 0.5) <= 1e-6;
    return {7, "Levy-Gromov equality on the model, -1/4 on the halved control", ok,
            detail::fmt("control margin %.9f at beta %.9f", bad.worst_margin,
                        bad.worst_location)};
}

/// Check 8: diameter integral equals pi / sqrt(delta) on the models.
inline CheckOutcome check_diameter_integral() {
    double worst = 0.0;
    for (double delta : {0.25, 1.0, 4.0}) {
        const NormalizedProfile h =
            normalize(model_profile(SpaceForm(2, delta, true), std::nullopt, 2049));
        worst = std::max(worst, std::abs(diameter_bound(h, 1) - pi / std::sqrt(delta)));
    }
    return {8, "diameter integral equals pi/sqrt(delta) on models", worst <= 1e-6,
            detail::fmt("max err %.3e (tol 1e-6)", worst)};
}

/// Check 9: cone relation P = (n+1) Vtilde / r at 3 sigma, with a
/// perturbed negative control.
inline CheckOutcome check_cone_relation_suite(long samples, std::uint64_t seed) {
    bool ok = true;
    struct Case {
        Body2D body;
        double r;
    };
    const std::vector<Case> cases{{Body2D::half_plane(), 1.0},
                                  {Body2D::wedge(pi / 2), 1.0},
                                  {Body2D::wedge(2 * pi / 3), 0.7},
                                  {Body2D::unit_square(), 0.5}};
    double worst = 1e300;
    for (const Case& c : cases) {
        const ComparisonReport rep =
            check_cone_relation(c.body, c.body.base_point(), c.r, samples, seed, 3.0);
        ok = ok && rep.passed;
        worst = std::min(worst, rep.worst_margin);
    }
    const ComparisonReport control = check_cone_relation(
        Body2D::wedge(2 * pi / 3), {0, 0}, 0.7, samples, seed, 3.0, 1.1);
    ok = ok && !control.passed;
    return {9, "cone relation at 3 sigma with failing x1.1 control", ok,
            detail::fmt("worst slack %.3e, control slack %.3e", worst, control.worst_margin)};
}

/// Check 10: small-volume bound for all flat bodies at 3 sigma.
inline CheckOutcome check_small_volume_suite(long samples, std::uint64_t seed) {
    bool ok = true;
    double worst = 1e300;
    const std::vector<double> rs{0.1, 0.3, 0.5};
    for (const Body2D& body : {Body2D::half_plane(), Body2D::unit_square(), Body2D::wedge(pi / 2),
                               Body2D::disk(1.0), Body2D::slab(1.0)}) {
        const ComparisonReport rep =
            check_small_volume_bound(body, body.base_point(), rs, samples, seed);
        ok = ok && rep.passed;
        worst = std::min(worst, rep.worst_margin);
    }
    return {10, "small-volume bound on all flat bodies at 3 sigma", ok,
            detail::fmt("worst slack %.3e", worst)};
}

/// Check 11: profile derivative equals n C_delta(r) / S_delta(r).
inline CheckOutcome check_derivative_relation(std::uint64_t seed) {
    const CounterRng rng(seed, 11);
    double worst = 0.0;
    int idx = 0;
    for (int d : {2, 3}) {
        for (double delta : {-1.0, 0.0, 1.0}) {
            const SpaceForm space(d, delta, true);
            const ProfileCurve curve = detail::verification_model(d, delta, 2049);
            const double top = curve.v_max();
            for (int k = 0; k < 20; ++k) {
                const double V = top * (0.1 + 0.8 * rng.uniform(idx++));
                const double r = model_radius_for_volume(space, V);
                const double oracle = (d - 1) * c_delta(delta, r) / s_delta(delta, r);
                const SideDerivatives sd = side_derivatives(curve, V);
                worst = std::max(worst, std::abs(0.5 * (sd.left + sd.right) - oracle));
            }
        }
    }
    return {11, "dI/dV = n C_delta / S_delta at random volumes", worst <= 1e-5,
            detail::fmt("max err %.3e (tol 1e-5)", worst)};
}

/// Check 12: Neumann eigenvalue of the model and the Cheeger constant
/// by both paths.
inline CheckOutcome check_eigen_and_cheeger() {
    const bool eigen_ok = neumann_eigenvalue_model(2, 1.0) == 2.0;
    const NormalizedProfile h = normalize(model_profile(SpaceForm(2, 1.0, true), std::nullopt,
                                                        2049));
    const double concave_path = cheeger_constant(h, true);
    const double generic_path = cheeger_constant(h, false);
    const double err = std::max(std::abs(concave_path - 1.0), std::abs(generic_path - 1.0));
    return {12, "Neumann eigenvalue (n+1)delta and Cheeger constant by both paths",
            eigen_ok && err <= 1e-8,
            detail::fmt("eigenvalue exact, cheeger err %.3e (tol 1e-8)", err)};
}

/// The full suite.  Deterministic for a given (samples, seed).
inline std::vector<CheckOutcome> run_verification(long samples = 1'000'000,
                                                  std::uint64_t seed = 42) {
    std::vector<CheckOutcome> out;
    out.push_back(check_n1_closed_form());
    out.push_back(check_asymptotic_constant());
    out.push_back(check_equality_differential_inequality());
    out.push_back(check_ivp_comparison());
    out.push_back(check_bvp_shooting());
    out.push_back(check_flat_upper_bound(samples, seed));
    out.push_back(check_levy_gromov());
    out.push_back(check_diameter_integral());
    out.push_back(check_cone_relation_suite(samples, seed));
    out.push_back(check_small_volume_suite(samples, seed));
    out.push_back(check_derivative_relation(seed));
    out.push_back(check_eigen_and_cheeger());
    return out;
}

}  // namespace isoprofile
