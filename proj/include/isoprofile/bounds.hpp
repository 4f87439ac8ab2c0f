#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "isoprofile/profile.hpp"
#include "isoprofile/quadrature.hpp"
#include "isoprofile/report.hpp"
#include "isoprofile/space_forms.hpp"

/// \file
/// Geometric functionals derived from a profile: Cheeger constant,
/// diameter bound through the normalized profile, model volume comparison,
/// and the Neumann eigenvalue bounds of the half-sphere model.

namespace isoprofile {

namespace detail {

template <typename F>
double golden_section_min(F&& f, double lo, double hi, double tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// Cheeger constant from the normalized profile.  Under concavity the
/// infimum of h(beta)/min(beta, 1-beta) sits at beta = 1/2, giving the
/// shortcut 2 h(1/2); the caller asserts concavity explicitly.  The generic
/// path takes the grid infimum (samples plus midpoints) refined by a local
/// golden-section search.
inline double cheeger_constant(const NormalizedProfile& h, bool assume_concave) {
    bool any_positive = false;
    for (double v : h.values) any_positive |= v > 0.0;
    if (!any_positive) throw std::invalid_argument("cheeger_constant: profile is identically zero");

    if (assume_concave) return 2.0 * h(0.5);

    auto ratio = [&](double beta) { return h(beta) / std::min(beta, 1.0 - beta); };
    double best = std::numeric_limits<double>::infinity();
    double best_beta = 0.5;
    auto visit = [&](double beta) {
        if (beta <= 0.0 || beta >= 1.0) return;
        const double r = ratio(beta);
        if (r < best) {
            best = r;
            best_beta = beta;
        }
    };
    for (std::size_t i = 0; i < h.betas.size(); ++i) {
        visit(h.betas[i]);
        if (i + 1 < h.betas.size()) visit(0.5 * (h.betas[i] + h.betas[i + 1]));
    }
    // The infimum of a ratio of interpolants can fall between samples.
    const double span = 1.0 / double(h.betas.size());
    const double lo = std::max(best_beta - span, 1e-12);
    const double hi = std::min(best_beta + span, 1.0 - 1e-12);
    const double refined = detail::golden_section_min(ratio, lo, hi);
    return std::min(best, ratio(refined));
}

/// Upper bound on the diameter: the integral of 1/h over [0, 1].
///
/// The integrand has integrable endpoint singularities governed by the
/// profile asymptotics h ~ c beta^{n/(n+1)}.  Near each endpoint the
/// integral is taken over a fitted two-term asymptotic form
/// c beta^{n/(n+1)} (1 + e1 beta^{2/(n+1)}) with the substitution
/// beta = u^{n+1} (which makes that piece's integrand bounded); in between,
/// 1/h is integrated cell by cell on the interpolant.  An endpoint decaying
/// measurably faster than the asymptotic rate is rejected: the integral
/// may then diverge and no guess is made.
inline double diameter_bound(const NormalizedProfile& h, int n) {
    if (n < 1) throw std::invalid_argument("diameter_bound: n must be >= 1");
    const std::size_t N = h.betas.size();
    for (std::size_t i = 1; i + 1 < N; ++i)
        if (!(h.values[i] > 0.0))
            throw std::invalid_argument("diameter_bound: h must be positive on (0, 1)");

    const double q = double(n) / (n + 1);
    const double w = 2.0 / (n + 1);

    struct End {
        std::size_t cut;   // sample index bounding the asymptotic piece
        double piece;      // integral of 1/h over the piece
    };

    // side = +1 fits near beta = 0 on (beta, h); side = -1 near beta = 1 on
    // (1 - beta, h).
    auto fit_end = [&](int side) {
        auto beta_of = [&](std::size_t i) {
            return side > 0 ? h.betas[i] : 1.0 - h.betas[N - 1 - i];
        };
        auto h_of = [&](std::size_t i) {
            return side > 0 ? h.values[i] : h.values[N - 1 - i];
        };
        std::size_t k = 1;
        while (k + 2 < N / 2 && beta_of(k) < 1e-3) ++k;
        std::size_t k2 = k + 1;
        while (k2 + 1 < N / 2 && beta_of(k2) < 2.5 * beta_of(k)) ++k2;

        const double b1 = beta_of(k), b2 = beta_of(k2);
        const double h1 = h_of(k), h2 = h_of(k2);
        const double p_hat = std::log(h2 / h1) / std::log(b2 / b1);
        if (p_hat > q + 0.05)
            throw std::domain_error(
                "diameter_bound: endpoint decays faster than the profile asymptotics; "
                "the integral may diverge");

        // Two-term fit h = c b^q (1 + e1 b^w) through the two samples.
        const double a1 = h1 / std::pow(b1, q);
        const double a2 = h2 / std::pow(b2, q);
        const double ce1 = (a2 - a1) / (std::pow(b2, w) - std::pow(b1, w));
        const double c = a1 - ce1 * std::pow(b1, w);
        // beta = u^{n+1} turns 1/h into (n+1) / (c (1 + e1 u^2)).
        const double u_cut = std::pow(b1, 1.0 / (n + 1));
        const double piece = integrate(
            [&](double u) { return (n + 1) / (c + ce1 * u * u); }, 0.0, u_cut, 1e-14);
        return End{k, piece};
    };

    const End left = fit_end(+1);
    const End right = fit_end(-1);

    double interior = 0.0;
    for (std::size_t i = left.cut; i + 1 <= N - 1 - right.cut; ++i)
        interior += integrate([&](double b) { return 1.0 / h(b); }, h.betas[i], h.betas[i + 1],
                              1e-14);
    return left.piece + interior + right.piece;
}

/// Bonnet-Myers diameter bound pi / sqrt(delta).
inline double myers_diameter(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("myers_diameter: delta must be positive");
    return pi / std::sqrt(delta);
}

/// Bishop-type volume comparison: vol(Omega) <= vol(half model of curvature
/// delta).
inline ComparisonReport volume_comparison(const ProfileCurve& profile, int n, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("volume_comparison: delta must be positive");
    if (!profile.total_volume)
        throw std::invalid_argument("volume_comparison: profile must have finite total volume");
    const SpaceForm model(n + 1, delta, true);
    const double model_vol = *model_total_volume(model);
    const double margin = model_vol - *profile.total_volume;
    const double tol = 1e-9 * model_vol;
    return make_report(margin, *profile.total_volume, std::abs(margin), tol);
}

/// Lowest non-zero Neumann eigenvalue of the half-sphere model: (n+1) delta.
inline double neumann_eigenvalue_model(int d, double delta) {
    if (d < 2) throw std::invalid_argument("neumann_eigenvalue_model: dimension must be >= 2");
    if (!(delta > 0.0))
        throw std::invalid_argument("neumann_eigenvalue_model: delta must be positive");
    return d * delta;
}

/// Cheeger-refined eigenvalue bound:
/// (cheeger / h_C(model))^{2/(n+1)} (n+1) delta.
inline double refined_eigenvalue_bound(int d, double delta, double cheeger) {
    if (!(cheeger > 0.0))
        throw std::invalid_argument("refined_eigenvalue_bound: cheeger must be positive");
    const double base = neumann_eigenvalue_model(d, delta);
    const SpaceForm model(d, delta, true);
    const double model_vol = *model_total_volume(model);
    const double model_cheeger = 2.0 * model_profile_at(model, 0.5 * model_vol) / model_vol;
    const int n = d - 1;
    return std::pow(cheeger / model_cheeger, 2.0 / (n + 1)) * base;
}

/// Aggregated bounds for a profile of known dimension against the model of
/// curvature delta.
struct BoundsSummary {
    double cheeger = 0.0;
    double diameter_upper = 0.0;
    std::optional<double> myers_upper;
    double volume = 0.0;
    std::optional<double> volume_model;
    double eigenvalue_lower = 0.0;
    double refined_eigenvalue_lower = 0.0;
};

inline BoundsSummary summarize_bounds(const ProfileCurve& profile, const NormalizedProfile& h,
                                      int n, double delta, bool assume_concave) {
    BoundsSummary s;
    s.cheeger = cheeger_constant(h, assume_concave);
    s.diameter_upper = diameter_bound(h, n);
    s.volume = profile.total_volume.value_or(profile.v_max());
    if (delta > 0.0) {
        s.myers_upper = myers_diameter(delta);
        const SpaceForm model(n + 1, delta, true);
        s.volume_model = *model_total_volume(model);
        s.eigenvalue_lower = neumann_eigenvalue_model(n + 1, delta);
        s.refined_eigenvalue_lower = refined_eigenvalue_bound(n + 1, delta, s.cheeger);
    }
    return s;
}

}  // namespace isoprofile
