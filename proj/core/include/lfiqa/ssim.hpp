#pragma once

#include "lfiqa/image.hpp"

namespace lfiqa {

struct SsimOptions {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
};

/// Mean single-scale SSIM over the valid region of an 11x11 Gaussian window.
/// C1 = (k1 R)^2, C2 = (k2 R)^2 with R = dynamic_range.
[[nodiscard]] double ssim(const Plane& a, const Plane& b, double dynamic_range, SsimOptions options = {});

/// The local SSIM map (valid region).
[[nodiscard]] Plane ssim_map(const Plane& a, const Plane& b, double dynamic_range, SsimOptions options = {});

}  // namespace lfiqa
