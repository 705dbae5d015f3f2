#pragma once

#include <array>
#include <vector>

#include "lfiqa/image.hpp"

namespace lfiqa {

struct DctEntropyFeatures {
    double whole = 0.0;
    std::array<double, 3> bands{};    // low, mid, high radial frequency
    std::array<double, 3> orients{};  // sectors by increasing angle atan2(l, h)
};

/// Orthonormal type-II DCT matrix of size n (rows are basis functions).
[[nodiscard]] Eigen::MatrixXd dct_matrix(int n);

/// AC coefficient positions (l, h) of an n x n block, grouped into 3 radial
/// bands and 3 angular sectors of equal count. Bands sort by radius
/// sqrt(l^2+h^2), sectors by atan2(l, h); ties fall back to radius, then l.
struct DctPartition {
    std::array<std::vector<std::pair<int, int>>, 3> bands;
    std::array<std::vector<std::pair<int, int>>, 3> orients;
};
[[nodiscard]] DctPartition dct_partition(int block);

/// Shannon entropy (natural log) of p = |c| / sum|c| over a coefficient set; 0 when all are zero.
[[nodiscard]] double magnitude_entropy(const std::vector<double>& coeffs);

/// Mean per-block entropy over non-overlapping block x block tiles (partial
/// tiles at the right and bottom edges are ignored).
[[nodiscard]] DctEntropyFeatures dct_entropy(const Plane& image, int block = 8);

}  // namespace lfiqa
