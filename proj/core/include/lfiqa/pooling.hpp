#pragma once

#include <array>

#include "lfiqa/features.hpp"

namespace lfiqa {

inline constexpr std::array<double, 4> kDefaultWeights = {0.25, 0.25, 0.25, 0.25};

struct PooledFeatures {
    Eigen::VectorXd f_final;
    std::array<double, 4> weights{};  // effective weights after renormalisation, sum 1
};

/// Weighted sum of the orientation vectors. Weights must be nonnegative with
/// a positive sum; they are renormalised over the orientations that are
/// present. Fails when every positively weighted orientation is absent.
/// Each coordinate is summed in sorted term order, so permuting orientations
/// together with their weights gives a bitwise identical result, and a
/// coordinate on which all contributing vectors agree is returned unchanged.
[[nodiscard]] PooledFeatures pool(const OrientationFeatures& orient,
                                  const std::array<double, 4>& weights = kDefaultWeights);

}  // namespace lfiqa
