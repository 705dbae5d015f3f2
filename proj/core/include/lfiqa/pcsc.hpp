#pragma once

#include <array>
#include <vector>

#include "lfiqa/aggd.hpp"
#include "lfiqa/dct_entropy.hpp"
#include "lfiqa/image.hpp"
#include "lfiqa/mggd.hpp"

namespace lfiqa {

inline constexpr int kPcscFeatureCount = 38;

struct PcscResult {
    std::vector<double> values;  // kPcscFeatureCount entries
    std::array<AggdParams, 3> aggd;
    std::array<DctEntropyFeatures, 3> dct;
    MggdParams mggd;
};

/// Layout: for each channel (L*, a*, b*): alpha, sigma_l, sigma_r, eta of the
/// AGGD fitted to the MSCN coefficients, then DCT entropies (whole, 3 bands,
/// 3 sectors); followed by the joint MGGD over per-pixel MSCN triples:
/// phi, gamma, M12, M13, M23.
[[nodiscard]] PcscResult pcsc_analyze(const std::array<Plane, 3>& pcs);
[[nodiscard]] std::vector<double> pcsc_features(const std::array<Plane, 3>& pcs);

}  // namespace lfiqa
