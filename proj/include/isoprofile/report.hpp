#pragma once

#include <cmath>

/// \file
/// Pass/fail verdict for an inequality check over a sampled curve.

namespace isoprofile {

/// The margin at a point is the slack of the required inequality (bound
/// minus value for an upper bound); negative margin means violation.
struct ComparisonReport {
    bool passed = false;
    double worst_margin = 0.0;    ///< most violating slack over all points
    double worst_location = 0.0;  ///< abscissa of the worst margin
    double tolerance = 0.0;
    bool equality_detected = false;  ///< |margin| <= tolerance at every point
    bool volume_violation = false;   ///< total-volume precheck failed (upper-bound checks)
};

inline ComparisonReport make_report(double worst_margin, double worst_location,
                                    double max_abs_margin, double tol) {
    ComparisonReport r;
    r.worst_margin = worst_margin;
    r.worst_location = worst_location;
    r.tolerance = tol;
    r.passed = worst_margin >= -tol;
    r.equality_detected = max_abs_margin <= tol;
    return r;
}

}  // namespace isoprofile
