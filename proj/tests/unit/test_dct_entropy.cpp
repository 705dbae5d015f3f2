#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "lfiqa/dct_entropy.hpp"
#include "support/test_support.hpp"

namespace lfiqa {
namespace {

// Orthonormal DCT-II coefficient by the defining double sum.
double naive_dct2(const Eigen::MatrixXd& b, int l, int h) {
    const int n = static_cast<int>(b.rows());
    auto c = [n](int k) { return k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n); };
    double s = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            s += b(x, y) * std::cos(std::numbers::pi * (2 * x + 1) * l / (2.0 * n)) *
                 std::cos(std::numbers::pi * (2 * y + 1) * h / (2.0 * n));
    return c(l) * c(h) * s;
}

double naive_entropy(const std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += std::abs(x);
    if (total == 0.0) return 0.0;
    double e = 0.0;
    for (double x : v) {
        const double p = std::abs(x) / total;
        if (p > 0.0) e -= p * std::log(p);
    }
    return e;
}

TEST(DctEntropy, MatrixMatchesDefinition) {
    const Eigen::MatrixXd d = dct_matrix(8);
    EXPECT_LT((d * d.transpose() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
    for (int k = 0; k < 8; ++k)
        for (int x = 0; x < 8; ++x) {
            const double c = k == 0 ? std::sqrt(1.0 / 8) : std::sqrt(2.0 / 8);
            EXPECT_NEAR(d(k, x), c * std::cos(std::numbers::pi * (2 * x + 1) * k / 16.0), 1e-14);
        }
}

TEST(DctEntropy, PartitionCoversAcOnce) {
    const DctPartition p = dct_partition(8);
    for (const auto* family : {&p.bands, &p.orients}) {
        std::set<std::pair<int, int>> seen;
        for (const auto& g : *family) {
            EXPECT_EQ(g.size(), 21u);
            for (const auto& c : g) EXPECT_TRUE(seen.insert(c).second);
        }
        EXPECT_EQ(seen.size(), 63u);
        EXPECT_FALSE(seen.count({0, 0}));
    }
    auto radius = [](std::pair<int, int> c) { return std::hypot(c.first, c.second); };
    double low_max = 0.0;
    for (const auto& c : p.bands[0]) low_max = std::max(low_max, radius(c));
    for (const auto& c : p.bands[2]) EXPECT_GE(radius(c), low_max);
}

TEST(DctEntropy, MagnitudeEntropy) {
    EXPECT_EQ(magnitude_entropy({0.0, 0.0, 0.0}), 0.0);
    EXPECT_NEAR(magnitude_entropy({1.0, -1.0, 1.0, -1.0}), std::log(4.0), 1e-15);
    EXPECT_EQ(magnitude_entropy({0.0, 3.0, 0.0}), 0.0);
}

TEST(DctEntropy, ConstantImageIsZero) {
    const DctEntropyFeatures f = dct_entropy(Plane::Constant(32, 32, 17.0));
    EXPECT_EQ(f.whole, 0.0);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(f.bands[k], 0.0);
        EXPECT_EQ(f.orients[k], 0.0);
    }
}

TEST(DctEntropy, SingleBasisFunctionHasZeroEntropy) {
    const Eigen::MatrixXd d = dct_matrix(8);
    // Block equal to basis (2, 5) plus a DC offset.
    const Eigen::MatrixXd block = (d.row(2).transpose() * d.row(5)).array() + 3.0;
    Plane img(16, 16);
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) img.block(8 * bi, 8 * bj, 8, 8) = block;
    const DctEntropyFeatures f = dct_entropy(img);
    EXPECT_NEAR(f.whole, 0.0, 1e-9);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(f.bands[k], 0.0, 1e-9);
        EXPECT_NEAR(f.orients[k], 0.0, 1e-9);
    }
}

TEST(DctEntropy, MatchesQuadrupleLoopOracle) {
    const Plane img = testing::random_plane(40, 36, 3, 0.0, 100.0);
    const DctPartition p = dct_partition(8);
    double whole = 0.0;
    std::array<double, 3> bands{};
    std::array<double, 3> orients{};
    int blocks = 0;
    for (int bi = 0; bi + 8 <= 40; bi += 8)
        for (int bj = 0; bj + 8 <= 36; bj += 8) {
            const Eigen::MatrixXd b = img.block(bi, bj, 8, 8);
            Eigen::MatrixXd c(8, 8);
            for (int l = 0; l < 8; ++l)
                for (int h = 0; h < 8; ++h) c(l, h) = naive_dct2(b, l, h);
            std::vector<double> ac;
            for (int l = 0; l < 8; ++l)
                for (int h = 0; h < 8; ++h)
                    if (l || h) ac.push_back(c(l, h));
            whole += naive_entropy(ac);
            for (int k = 0; k < 3; ++k) {
                std::vector<double> vb;
                std::vector<double> vo;
                for (auto [l, h] : p.bands[k]) vb.push_back(c(l, h));
                for (auto [l, h] : p.orients[k]) vo.push_back(c(l, h));
                bands[k] += naive_entropy(vb);
                orients[k] += naive_entropy(vo);
            }
            ++blocks;
        }
    const DctEntropyFeatures f = dct_entropy(img);
    EXPECT_EQ(blocks, 20);
    EXPECT_NEAR(f.whole, whole / blocks, 1e-9);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(f.bands[k], bands[k] / blocks, 1e-9);
        EXPECT_NEAR(f.orients[k], orients[k] / blocks, 1e-9);
    }
    // Uniform noise spreads energy broadly: close to the ln 63 ceiling.
    EXPECT_GT(f.whole, std::log(63.0) - 0.5);
}

TEST(DctEntropy, InvariantToConstantOffset) {
    const Plane img = testing::random_plane(24, 24, 4, 0.0, 50.0);
    const DctEntropyFeatures a = dct_entropy(img);
    const DctEntropyFeatures b = dct_entropy(img.array() + 25.0);
    EXPECT_NEAR(a.whole, b.whole, 1e-9);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(a.bands[k], b.bands[k], 1e-9);
}

TEST(DctEntropy, ImageSmallerThanBlockThrows) {
    EXPECT_ANY_THROW((void)dct_entropy(Plane::Zero(7, 20)));
}

}  // namespace
}  // namespace lfiqa
