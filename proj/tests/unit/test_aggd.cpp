#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "lfiqa/aggd.hpp"
#include "lfiqa/error.hpp"
#include "support/test_support.hpp"

namespace lfiqa {
namespace {

using testing::sample_aggd;

TEST(Aggd, GgdRatioAtGaussian) {
    EXPECT_NEAR(ggd_ratio(2.0), 2.0 / std::numbers::pi, 1e-14);
    EXPECT_NEAR(ggd_ratio(1.0), 0.5, 1e-14);
    double prev = 0.0;
    for (double a = 0.2; a <= 10.0; a += 0.1) {
        EXPECT_GT(ggd_ratio(a), prev);
        prev = ggd_ratio(a);
    }
}

TEST(Aggd, GaussianSamples) {
    const auto x = sample_aggd(2.0, 1.0, 1.0, 200000, 1);
    const AggdParams p = fit_aggd(x);
    EXPECT_NEAR(p.alpha, 2.0, 0.05);
    EXPECT_NEAR(p.sigma_l, 1.0, 0.02);
    EXPECT_NEAR(p.sigma_r, 1.0, 0.02);
    EXPECT_NEAR(p.eta, 0.0, 0.02);
    EXPECT_FALSE(p.degenerate);
}

TEST(Aggd, LaplacianAsymmetric) {
    const auto x = sample_aggd(1.0, 0.5, 1.5, 200000, 2);
    const AggdParams p = fit_aggd(x);
    EXPECT_NEAR(p.alpha, 1.0, 0.05);
    EXPECT_NEAR(p.sigma_l, 0.5, 0.02);
    EXPECT_NEAR(p.sigma_r, 1.5, 0.04);
    EXPECT_GT(p.eta, 0.0);
}

TEST(Aggd, EtaMatchesClosedForm) {
    const AggdParams p = fit_aggd(sample_aggd(1.5, 0.8, 1.2, 100000, 3));
    const double want = (p.beta_r() - p.beta_l()) * std::tgamma(2.0 / p.alpha) / std::tgamma(1.0 / p.alpha);
    EXPECT_NEAR(p.eta, want, 1e-12);
    const double k = std::sqrt(std::tgamma(1.0 / p.alpha) / std::tgamma(3.0 / p.alpha));
    EXPECT_NEAR(p.beta_l(), p.sigma_l * k, 1e-12);
}

TEST(Aggd, SymmetricSampleHasZeroEta) {
    auto x = sample_aggd(1.2, 1.0, 1.0, 5000, 4);
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) x.push_back(-x[i]);
    const AggdParams p = fit_aggd(x);
    EXPECT_EQ(p.eta, 0.0);
    EXPECT_EQ(p.sigma_l, p.sigma_r);
}

TEST(Aggd, NegationSwapsSides) {
    const auto x = sample_aggd(0.8, 0.7, 1.9, 20000, 5);
    std::vector<double> neg(x.size());
    std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
    const AggdParams a = fit_aggd(x);
    const AggdParams b = fit_aggd(neg);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.sigma_l, b.sigma_r);
    EXPECT_EQ(a.sigma_r, b.sigma_l);
    EXPECT_EQ(a.eta, -b.eta);
}

TEST(Aggd, OrderIndependent) {
    auto x = sample_aggd(1.7, 1.0, 0.6, 30000, 6);
    const AggdParams a = fit_aggd(x);
    std::mt19937_64 rng(7);
    std::shuffle(x.begin(), x.end(), rng);
    const AggdParams b = fit_aggd(x);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.sigma_l, b.sigma_l);
    EXPECT_EQ(a.sigma_r, b.sigma_r);
    EXPECT_EQ(a.eta, b.eta);
}

TEST(Aggd, EstimatesTightenWithSampleSize) {
    std::vector<double> err_small;
    std::vector<double> err_large;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        err_small.push_back(std::abs(fit_aggd(sample_aggd(1.5, 1.0, 2.0, 1000, 100 + seed)).alpha - 1.5));
        err_large.push_back(std::abs(fit_aggd(sample_aggd(1.5, 1.0, 2.0, 1000000, 200 + seed)).alpha - 1.5));
    }
    EXPECT_LT(testing::median_of(err_large), testing::median_of(err_small));
    EXPECT_LT(testing::median_of(err_large), 0.01);
}

TEST(Aggd, DegenerateAndTooFew) {
    const std::vector<double> zeros(500, 0.0);
    const AggdParams z = fit_aggd(zeros);
    EXPECT_TRUE(z.degenerate);
    EXPECT_EQ(z.alpha, kAggdAlphaMin);
    EXPECT_EQ(z.sigma_l, 0.0);
    EXPECT_EQ(z.sigma_r, 0.0);
    EXPECT_EQ(z.eta, 0.0);
    const std::vector<double> few(99, 1.0);
    EXPECT_THROW((void)fit_aggd(few), ContractError);
}

TEST(Aggd, OneSidedSample) {
    std::vector<double> pos = sample_aggd(2.0, 1.0, 1.0, 4000, 8);
    for (double& v : pos) v = std::abs(v);
    const AggdParams p = fit_aggd(pos);
    EXPECT_EQ(p.sigma_l, 0.0);
    EXPECT_GT(p.sigma_r, 0.0);
    EXPECT_GE(p.alpha, kAggdAlphaMin);
    EXPECT_LE(p.alpha, kAggdAlphaMax);
}

}  // namespace
}  // namespace lfiqa
