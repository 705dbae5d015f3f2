#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "lfiqa/error.hpp"
#include "lfiqa/mggd.hpp"
#include "support/test_support.hpp"

namespace lfiqa {
namespace {

using testing::sample_gaussian;

TEST(Mggd, IdentityGaussian) {
    const MggdParams p = fit_mggd(sample_gaussian(Eigen::MatrixXd::Identity(3, 3), 20000, 1));
    EXPECT_GE(p.phi, 0.9);
    EXPECT_LE(p.phi, 1.1);
    EXPECT_EQ(p.n, 3);
    EXPECT_NEAR(p.scatter.trace(), 3.0, 1e-9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) {
                EXPECT_NEAR(p.scatter(i, j), 0.0, 0.03);
            }
    EXPECT_TRUE(p.converged);
    EXPECT_FALSE(p.regularized);
}

TEST(Mggd, ScaleMovesGammaOnly) {
    const Eigen::MatrixXd x = sample_gaussian(Eigen::MatrixXd::Identity(3, 3), 20000, 2);
    const MggdParams a = fit_mggd(x);
    const MggdParams b = fit_mggd(4.0 * x);
    EXPECT_NEAR(b.gamma / a.gamma, 16.0, 16.0 * 0.05);
    EXPECT_NEAR(b.phi, a.phi, 0.05 * a.phi);
    EXPECT_LT((a.scatter - b.scatter).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Mggd, CorrelationIsRecovered) {
    Eigen::MatrixXd cov(3, 3);
    cov << 1.0, 0.5, 0.0, 0.5, 1.0, 0.0, 0.0, 0.0, 1.0;
    const MggdParams p = fit_mggd(sample_gaussian(cov, 40000, 3));
    EXPECT_NEAR(p.scatter(0, 1) / std::sqrt(p.scatter(0, 0) * p.scatter(1, 1)), 0.5, 0.03);
    EXPECT_NEAR(p.scatter(0, 2), 0.0, 0.03);
}

TEST(Mggd, HeavyTailsLowerShape) {
    // A Gaussian scale mixture is heavier tailed than a Gaussian.
    Eigen::MatrixXd x = sample_gaussian(Eigen::MatrixXd::Identity(2, 2), 20000, 4);
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> e(1.0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) *= std::sqrt(e(rng));
    EXPECT_LT(fit_mggd(x).phi, 0.9);
}

TEST(Mggd, SingularInputIsRegularised) {
    Eigen::MatrixXd x = sample_gaussian(Eigen::MatrixXd::Identity(2, 2), 1000, 6);
    Eigen::MatrixXd y(x.rows(), 3);
    y << x, x.col(0);  // third coordinate duplicates the first
    const MggdParams p = fit_mggd(y);
    EXPECT_TRUE(p.regularized);
    EXPECT_TRUE(std::isfinite(p.phi));
    EXPECT_TRUE(std::isfinite(p.gamma));
}

TEST(Mggd, SignFlipInvariant) {
    const Eigen::MatrixXd x = sample_gaussian(Eigen::MatrixXd::Identity(3, 3), 5000, 7);
    const MggdParams a = fit_mggd(x);
    const MggdParams b = fit_mggd(-x);
    EXPECT_NEAR(a.phi, b.phi, 1e-9);
    EXPECT_NEAR(a.gamma, b.gamma, 1e-9 * a.gamma);
}

TEST(Mggd, ZeroRowsAreDropped) {
    Eigen::MatrixXd x = sample_gaussian(Eigen::MatrixXd::Identity(2, 2), 2000, 8);
    Eigen::MatrixXd padded(x.rows() + 300, 2);
    padded << x, Eigen::MatrixXd::Zero(300, 2);
    const MggdParams a = fit_mggd(x);
    const MggdParams b = fit_mggd(padded);
    EXPECT_NEAR(a.phi, b.phi, 1e-12);
    const MggdParams z = fit_mggd(Eigen::MatrixXd::Zero(200, 3));
    EXPECT_TRUE(z.degenerate);
}

TEST(Mggd, TooFewRowsThrow) {
    EXPECT_THROW((void)fit_mggd(sample_gaussian(Eigen::MatrixXd::Identity(3, 3), 89, 9)), ContractError);
    EXPECT_NO_THROW((void)fit_mggd(sample_gaussian(Eigen::MatrixXd::Identity(3, 3), 90, 9)));
}

}  // namespace
}  // namespace lfiqa
