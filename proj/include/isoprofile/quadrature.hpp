#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

/// \file
/// Adaptive composite Gauss-Legendre quadrature for smooth integrands.

namespace isoprofile {

namespace detail {

// 15-point Gauss-Legendre rule on [-1, 1] (positive half; rule is symmetric).
inline constexpr std::array<double, 8> gl15_nodes = {
    0.0000000000000000000, 0.2011940939974345223, 0.3941513470775633699,
    0.5709721726085388475, 0.7244177313601700474, 0.8482065834104272162,
    0.9372733924007059043, 0.9879925180204854284};
inline constexpr std::array<double, 8> gl15_weights = {
    0.2025782419255612729, 0.1984314853271115765, 0.1861610000155622110,
    0.1662692058169939336, 0.1395706779261543144, 0.1071592204671719350,
    0.0703660474881081247, 0.0307532419961172684};

template <typename F>
double gl15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = gl15_weights[0] * f(mid);
    for (int k = 1; k < 8; ++k) {
        const double dx = half * gl15_nodes[k];
        sum += gl15_weights[k] * (f(mid + dx) + f(mid - dx));
    }
    return sum * half;
}

template <typename F>
double adaptive_gl_rec(F&& f, double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl15(f, a, mid);
    const double right = gl15(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= tol || depth >= 48)
        return left + right;
    return adaptive_gl_rec(f, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive_gl_rec(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Integrate f over [a, b] to absolute tolerance abs_tol.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-13) {
    if (a == b) return 0.0;
    if (!(abs_tol > 0)) throw std::invalid_argument("integrate: tolerance must be positive");
    return detail::adaptive_gl_rec(f, a, b, detail::gl15(f, a, b), abs_tol, 0);
}

}  // namespace isoprofile
