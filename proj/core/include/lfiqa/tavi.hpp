#pragma once

#include <array>
#include <vector>

#include "lfiqa/image.hpp"
#include "lfiqa/viewstack.hpp"

namespace lfiqa {

struct SsCurve {
    std::vector<double> values;     // SSIM of each view against the principal image
    std::vector<double> positions;  // i / (V - 1), or {0} for a single view
};

struct QuadFit {
    double f1 = 0.0;  // p^2
    double f2 = 0.0;  // p
    double f3 = 0.0;  // constant
    double residual_rms = 0.0;
};

struct CoocFeatures {
    double contrast = 0.0;
    double asm_ = 0.0;  // angular second moment
    double entropy = 0.0;
    double idm = 0.0;
};

/// Nominal dynamic ranges of L*, a*, b* used for the SSIM constants.
inline constexpr std::array<double, 3> kLabDynamicRange = {100.0, 255.0, 255.0};

[[nodiscard]] SsCurve ss_curve(const ViewStack& stack, const Plane& pc, double dynamic_range);

/// Population standard deviation of the curve values.
[[nodiscard]] double curve_std(const SsCurve& curve);

/// Least squares f1 p^2 + f2 p + f3 through the curve; needs 3 or more points.
[[nodiscard]] QuadFit fit_quadratic(const SsCurve& curve);

/// Grey-level co-occurrence descriptors of the quantised curve. Values are
/// clamped to [0,1] and binned into `levels` equal bins; consecutive pairs
/// are counted in both directions and normalised.
[[nodiscard]] CoocFeatures cooc_features(const SsCurve& curve, int levels = 8);

inline constexpr int kTaviFeatureCount = 21;

/// Per channel: f1, f2, f3, contrast, asm, entropy, idm.
[[nodiscard]] std::vector<double> tavi_features(const std::array<const ViewStack*, 3>& stacks,
                                                const std::array<Plane, 3>& pcs,
                                                const std::array<double, 3>& dynamic_ranges = kLabDynamicRange);

}  // namespace lfiqa
