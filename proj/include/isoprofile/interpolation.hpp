#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

/// \file
/// Shape-preserving piecewise-cubic interpolation of a sampled curve.
///
/// Node slopes come from the local three-point parabola, then are limited
/// with the Fritsch-Carlson box criterion on cells whose neighbourhood is
/// monotone.  Cells next to a sign change of the secant slopes are left
/// unlimited: there the underlying curve has a genuine interior extremum
/// and the parabolic slope is the faithful choice (limiting it would
/// flatten smooth maxima to first order).  Data that is monotone
/// everywhere therefore yields a monotone interpolant, and smooth data is
/// reproduced to third order.

namespace isoprofile {

class ShapePreservingCubic {
public:
    ShapePreservingCubic() = default;

    ShapePreservingCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size() || x_.size() < 2)
            throw std::invalid_argument("interpolation: need at least two samples");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("interpolation: abscissae must be strictly increasing");
        compute_slopes();
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& abscissae() const { return x_; }
    const std::vector<double>& ordinates() const { return y_; }

    double operator()(double x) const {
        const std::size_t i = cell_index(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
    }

    /// Derivative of the interpolant (continuous across cells).
    double derivative(double x) const {
        const std::size_t i = cell_index(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double g00 = 6 * t * (t - 1) / h;
        const double g10 = (3 * t - 1) * (t - 1);
        const double g01 = -g00;
        const double g11 = t * (3 * t - 2);
        return g00 * y_[i] + g10 * m_[i] + g01 * y_[i + 1] + g11 * m_[i + 1];
    }

    /// Width of the cell containing x.
    double cell_width(double x) const {
        const std::size_t i = cell_index(x);
        return x_[i + 1] - x_[i];
    }

private:
    std::vector<double> x_, y_, m_;

    std::size_t cell_index(double x) const {
        if (x < x_.front() || x > x_.back())
            throw std::domain_error("interpolation: abscissa outside sampled range");
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        if (i > 0) --i;
        if (i >= x_.size() - 1) i = x_.size() - 2;
        return i;
    }

    void compute_slopes() {
        const std::size_t n = x_.size();
        m_.assign(n, 0.0);
        if (n == 2) {
            m_[0] = m_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
            return;
        }

        std::vector<double> dx(n - 1), d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            dx[i] = x_[i + 1] - x_[i];
            d[i] = (y_[i + 1] - y_[i]) / dx[i];
        }

        // A cell is apex-adjacent when one of its secants meets a secant of
        // opposite sign; the limiter is skipped across such cells.
        auto apex_adjacent = [&](std::size_t cell) {
            if (cell > 0 && d[cell - 1] * d[cell] < 0) return true;
            if (cell + 1 < d.size() && d[cell] * d[cell + 1] < 0) return true;
            return false;
        };

        for (std::size_t i = 1; i + 1 < n; ++i) {
            // Three-point parabolic slope (exact for quadratics).
            double p = (dx[i] * d[i - 1] + dx[i - 1] * d[i]) / (dx[i - 1] + dx[i]);
            m_[i] = limit_slope(p, d[i - 1], apex_adjacent(i - 1), d[i], apex_adjacent(i));
        }

        // One-sided parabolic endpoint slopes with the usual clamp.
        m_[0] = endpoint_slope(dx[0], dx[1], d[0], d[1]);
        m_[n - 1] = endpoint_slope(dx[n - 2], dx[n - 3], d[n - 2], d[n - 3]);
    }

    static double limit_slope(double p, double d_left, bool apex_left,
                              double d_right, bool apex_right) {
        double m = p;
        if (!apex_left) m = limit_against(m, d_left);
        if (!apex_right) m = limit_against(m, d_right);
        return m;
    }

    // Fritsch-Carlson box: slope and secant share sign, |m| <= 3|d|.
    static double limit_against(double m, double d) {
        if (d == 0.0) return 0.0;
        if (m * d <= 0.0) return 0.0;
        if (std::abs(m) > 3.0 * std::abs(d)) return 3.0 * d;
        return m;
    }

    static double endpoint_slope(double h0, double h1, double d0, double d1) {
        double p = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (p * d0 <= 0.0) return 0.0;
        if (d1 * d0 < 0.0 && std::abs(p) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return p;
    }
};

}  // namespace isoprofile
