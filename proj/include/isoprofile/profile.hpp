#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isoprofile/interpolation.hpp"

/// \file
/// Sampled isoperimetric profiles.  A ProfileCurve stores (volume, perimeter)
/// pairs of V |-> I(V); a NormalizedProfile stores the probability-measure
/// view beta |-> h(beta) = I(beta * vol) / vol on [0, 1].  Between samples
/// both evaluate through the shape-preserving cubic interpolant, which is
/// the data model's evaluation contract.

namespace isoprofile {

struct ProfileCurve {
    int ambient_dim = 0;
    /// Total volume of the underlying region; nullopt marks an unbounded
    /// region sampled up to a finite cutoff.
    std::optional<double> total_volume;
    std::vector<double> volumes;
    std::vector<double> perimeters;
    ShapePreservingCubic interp;

    ProfileCurve() = default;

    ProfileCurve(int dim, std::optional<double> total_vol, std::vector<double> v,
                 std::vector<double> p)
        : ambient_dim(dim), total_volume(total_vol), volumes(std::move(v)),
          perimeters(std::move(p)) {
        if (ambient_dim < 2) throw std::invalid_argument("ProfileCurve: ambient_dim must be >= 2");
        if (volumes.size() < 2 || volumes.size() != perimeters.size())
            throw std::invalid_argument("ProfileCurve: need matching sample vectors");
        if (volumes.front() != 0.0 || perimeters.front() != 0.0)
            throw std::invalid_argument("ProfileCurve: first sample must be (0, 0)");
        for (double p_i : perimeters)
            if (!(p_i >= 0.0)) throw std::invalid_argument("ProfileCurve: perimeter must be >= 0");
        if (total_volume) {
            if (!(*total_volume > 0.0))
                throw std::invalid_argument("ProfileCurve: total volume must be positive");
            if (volumes.back() > *total_volume * (1.0 + 1e-12))
                throw std::invalid_argument("ProfileCurve: samples exceed the total volume");
            // the profile vanishes only at 0 and at the total volume
            if (volumes.back() >= *total_volume * (1.0 - 1e-12) && perimeters.back() != 0.0)
                throw std::invalid_argument(
                    "ProfileCurve: perimeter must vanish at the total volume");
        }
        interp = ShapePreservingCubic(volumes, perimeters);
    }

    double operator()(double v) const { return interp(v); }
    double v_min() const { return volumes.front(); }
    double v_max() const { return volumes.back(); }
};

struct NormalizedProfile {
    std::vector<double> betas;
    std::vector<double> values;
    ShapePreservingCubic interp;

    NormalizedProfile() = default;

    NormalizedProfile(std::vector<double> b, std::vector<double> h)
        : betas(std::move(b)), values(std::move(h)) {
        if (betas.size() < 3 || betas.size() != values.size())
            throw std::invalid_argument("NormalizedProfile: need matching sample vectors");
        if (betas.front() != 0.0 || betas.back() != 1.0)
            throw std::invalid_argument("NormalizedProfile: beta range must be [0, 1]");
        if (values.front() != 0.0 || values.back() != 0.0)
            throw std::invalid_argument("NormalizedProfile: h must vanish at the endpoints");
        for (double h_i : values)
            if (!(h_i >= 0.0)) throw std::invalid_argument("NormalizedProfile: h must be >= 0");
        interp = ShapePreservingCubic(betas, values);
    }

    double operator()(double beta) const { return interp(beta); }
};

}  // namespace isoprofile
