#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/lfio.hpp"
#include "lfiqa/viewstack.hpp"

namespace lfiqa {

inline constexpr int kFeatureDim = 59;  // 38 PCSC + 21 TAVI

/// Description of one column of the 59-dimensional feature layout.
struct FeatureColumn {
    std::string name;     // "f001" .. "f059"
    std::string channel;  // "L", "a", "b", or "Lab" for joint MGGD terms
    std::string group;    // "pcsc" or "tavi"
    std::string feature;  // e.g. "aggd_alpha", "dct_band_low", "ss_f1"
};

[[nodiscard]] const std::vector<FeatureColumn>& feature_columns();

/// Per-orientation feature vectors averaged over that orientation's usable stacks.
struct OrientationFeatures {
    std::array<Eigen::VectorXd, 4> f;  // indexed by orientation_index
    std::array<bool, 4> present{};
    std::array<int, 4> stack_count{};
};

struct ExtractOptions {
    int min_stack_len = 3;
};

/// 59 features of one aligned stack triple (channels L*, a*, b*).
[[nodiscard]] Eigen::VectorXd stack_features(const std::array<const ViewStack*, 3>& stacks);

/// Full pipeline for one light field: Lab conversion, four orientation
/// families, per-stack features, per-orientation average.
[[nodiscard]] OrientationFeatures extract_features(const LightField& lf, ExtractOptions options = {});

}  // namespace lfiqa
