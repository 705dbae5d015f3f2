#include "lfiqa/dct_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "lfiqa/error.hpp"

namespace lfiqa {

Eigen::MatrixXd dct_matrix(int n) {
    Eigen::MatrixXd d(n, n);
    for (int k = 0; k < n; ++k) {
        const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (int i = 0; i < n; ++i) d(k, i) = scale * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
    }
    return d;
}

DctPartition dct_partition(int block) {
    std::vector<std::pair<int, int>> ac;
    for (int l = 0; l < block; ++l)
        for (int h = 0; h < block; ++h)
            if (l != 0 || h != 0) ac.emplace_back(l, h);
    if (ac.size() % 3 != 0) throw ContractError("DCT block AC count must be divisible by 3");
    const std::size_t third = ac.size() / 3;
    auto radius = [](const std::pair<int, int>& p) { return p.first * p.first + p.second * p.second; };
    auto angle = [](const std::pair<int, int>& p) { return std::atan2(p.first, p.second); };

    DctPartition part;
    auto by_radius = ac;
    std::stable_sort(by_radius.begin(), by_radius.end(), [&](const auto& a, const auto& b) {
        return std::make_tuple(radius(a), a.first) < std::make_tuple(radius(b), b.first);
    });
    auto by_angle = ac;
    std::stable_sort(by_angle.begin(), by_angle.end(), [&](const auto& a, const auto& b) {
        return std::make_tuple(angle(a), radius(a), a.first) < std::make_tuple(angle(b), radius(b), b.first);
    });
    for (std::size_t g = 0; g < 3; ++g) {
        part.bands[g].assign(by_radius.begin() + static_cast<long>(g * third),
                             by_radius.begin() + static_cast<long>((g + 1) * third));
        part.orients[g].assign(by_angle.begin() + static_cast<long>(g * third),
                               by_angle.begin() + static_cast<long>((g + 1) * third));
    }
    return part;
}

double magnitude_entropy(const std::vector<double>& coeffs) {
    double total = 0.0;
    for (double c : coeffs) total += std::abs(c);
    if (total <= 0.0) return 0.0;
    double e = 0.0;
    for (double c : coeffs) {
        const double p = std::abs(c) / total;
        if (p > 0.0) e -= p * std::log(p);
    }
    return e;
}

DctEntropyFeatures dct_entropy(const Plane& image, int block) {
    if (block < 2) throw ContractError("DCT block must be at least 2");
    if (image.rows() < block || image.cols() < block) {
        throw ContractError("image smaller than one DCT block");
    }
    const Eigen::MatrixXd d = dct_matrix(block);
    const DctPartition part = dct_partition(block);
    const Eigen::Index nbx = image.rows() / block;
    const Eigen::Index nby = image.cols() / block;

    DctEntropyFeatures out;
    std::vector<double> all;
    std::vector<double> group;
    Eigen::MatrixXd c(block, block);
    for (Eigen::Index by = 0; by < nby; ++by) {
        for (Eigen::Index bx = 0; bx < nbx; ++bx) {
            const auto tile = image.block(bx * block, by * block, block, block);
            // A DC shift only moves c(0,0); removing it first keeps flat tiles exactly zero.
            c.noalias() = d * (tile.array() - tile(0, 0)).matrix() * d.transpose();
            double max_ac = 0.0;
            for (int l = 0; l < block; ++l)
                for (int h = 0; h < block; ++h)
                    if (l != 0 || h != 0) max_ac = std::max(max_ac, std::abs(c(l, h)));
            const double floor = 1e-12 * max_ac;
            auto coef = [&](int l, int h) { return std::abs(c(l, h)) <= floor ? 0.0 : c(l, h); };

            all.clear();
            for (int l = 0; l < block; ++l)
                for (int h = 0; h < block; ++h)
                    if (l != 0 || h != 0) all.push_back(coef(l, h));
            out.whole += magnitude_entropy(all);
            for (std::size_t g = 0; g < 3; ++g) {
                group.clear();
                for (const auto& [l, h] : part.bands[g]) group.push_back(coef(l, h));
                out.bands[g] += magnitude_entropy(group);
                group.clear();
                for (const auto& [l, h] : part.orients[g]) group.push_back(coef(l, h));
                out.orients[g] += magnitude_entropy(group);
            }
        }
    }
    const double blocks = static_cast<double>(nbx * nby);
    out.whole /= blocks;
    for (std::size_t g = 0; g < 3; ++g) {
        out.bands[g] /= blocks;
        out.orients[g] /= blocks;
    }
    return out;
}

}  // namespace lfiqa
