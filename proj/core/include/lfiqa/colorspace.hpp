#pragma once

#include <array>
#include <vector>

#include "lfiqa/image.hpp"
#include "lfiqa/lfio.hpp"

namespace lfiqa {

/// CIELAB channels of one view, native scale (L* in [0,100]).
struct LabImage {
    Plane L;
    Plane a;
    Plane b;

    [[nodiscard]] const Plane& channel(int n) const;  // n = 1 (L*), 2 (a*), 3 (b*)
};

/// sRGB (D65, 2 degree observer) to CIELAB. Input must lie in [0,1].
[[nodiscard]] LabImage srgb_to_cielab(const RgbImage& image);

/// Single-pixel version, returns {L*, a*, b*}.
[[nodiscard]] std::array<double, 3> srgb_to_cielab(double r, double g, double b);

/// Inverse conversion (Lab to sRGB in [0,1], clamped).
[[nodiscard]] std::array<double, 3> cielab_to_srgb(double L, double a, double b);

/// One Lab channel for every view of a light field, row-major over (s, t).
struct LabChannelGrid {
    AngularSize angular;
    std::vector<Plane> views;

    [[nodiscard]] const Plane& view(int s, int t) const {
        return views[static_cast<std::size_t>((s - 1) * angular.t + (t - 1))];
    }
};

/// Converts all views and splits them into the three channel grids.
[[nodiscard]] std::array<LabChannelGrid, 3> lab_channels(const LightField& lf);

}  // namespace lfiqa
