#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

/// \file
/// Bracketed scalar root finding: bisection narrowed by secant steps.

namespace isoprofile {

/// Find the root of f in [lo, hi] where f(lo) and f(hi) have opposite signs.
/// The bracket always shrinks (secant steps that leave it or stall fall back
/// to bisection), so convergence is guaranteed for continuous f.
template <typename F>
double find_root(F&& f, double lo, double hi, double rel_tol = 1e-12,
                 int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("find_root: endpoints do not bracket a root");

    for (int it = 0; it < max_iter; ++it) {
        const double width = hi - lo;
        if (width <= rel_tol * (std::abs(lo) + std::abs(hi) + 1e-300)) break;

        // Secant proposal, kept strictly inside the bracket.
        double xs = lo - flo * width / (fhi - flo);
        const double guard = 0.01 * width;
        if (!(xs > lo + guard) || !(xs < hi - guard)) xs = 0.5 * (lo + hi);

        const double fx = f(xs);
        if (fx == 0.0) return xs;
        if (flo * fx < 0.0) {
            hi = xs;
            fhi = fx;
        } else {
            lo = xs;
            flo = fx;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace isoprofile
