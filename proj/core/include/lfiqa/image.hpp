#pragma once

#include <Eigen/Core>

namespace lfiqa {

/// One real-valued image channel. Row index is the spatial x coordinate,
/// column index is y.
using Plane = Eigen::MatrixXd;

/// Three co-registered channels of one view.
struct RgbImage {
    Plane r;
    Plane g;
    Plane b;

    [[nodiscard]] Eigen::Index rows() const { return r.rows(); }
    [[nodiscard]] Eigen::Index cols() const { return r.cols(); }
};

}  // namespace lfiqa
