#pragma once

#include "lfiqa/image.hpp"

namespace lfiqa {

struct MscnField {
    Plane coeffs;
    int window_halfsize = 3;
    double window_sigma = 7.0 / 6.0;
};

/// Normalised circular Gaussian window of size (2*half+1)^2.
[[nodiscard]] Eigen::MatrixXd gaussian_window(int half, double sigma);

/// Mirror index into [0, n) with the edge sample repeated (…,1,0 | 0,1,…).
[[nodiscard]] inline Eigen::Index reflect_index(Eigen::Index i, Eigen::Index n) {
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
    return i;
}

/// Mean-subtracted contrast-normalised coefficients (I - mu) / (sigma + 1)
/// with a 7x7 Gaussian window (sigma = 7/6) and symmetric border reflection.
/// Requires an image of at least 7x7.
[[nodiscard]] MscnField mscn(const Plane& image);

}  // namespace lfiqa
