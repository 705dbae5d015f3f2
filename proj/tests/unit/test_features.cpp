#include <gtest/gtest.h>

#include <set>

#include "lfiqa/error.hpp"
#include "lfiqa/features.hpp"
#include "lfiqa/pooling.hpp"
#include "lfiqa/synth.hpp"

namespace lfiqa {
namespace {

OrientationFeatures orient_of(const std::array<Eigen::VectorXd, 4>& f, std::array<bool, 4> present = {true, true, true, true}) {
    OrientationFeatures o;
    o.f = f;
    o.present = present;
    for (int k = 0; k < 4; ++k) o.stack_count[k] = present[k] ? 1 : 0;
    return o;
}

TEST(FeatureColumns, LayoutAndNames) {
    const auto& cols = feature_columns();
    ASSERT_EQ(cols.size(), static_cast<std::size_t>(kFeatureDim));
    std::set<std::string> names;
    for (const auto& c : cols) names.insert(c.name);
    EXPECT_EQ(names.size(), 59u);
    EXPECT_EQ(cols.front().name, "f001");
    EXPECT_EQ(cols.back().name, "f059");
    int pcsc = 0;
    for (const auto& c : cols) pcsc += c.group == "pcsc";
    EXPECT_EQ(pcsc, 38);
    EXPECT_EQ(cols[38].feature, "ss_f1");
    EXPECT_EQ(cols[38].channel, "L");
    EXPECT_EQ(cols[58].feature, "cooc_idm");
    EXPECT_EQ(cols[58].channel, "b");
}

TEST(ExtractFeatures, SmallGridStackCounts) {
    SynthSpec spec;
    spec.angular = {5, 5};
    spec.spatial = {32, 32};
    const OrientationFeatures o = extract_features(generate(spec));
    EXPECT_EQ(o.stack_count, (std::array<int, 4>{5, 5, 5, 5}));  // 45 and 135 keep lengths 3, 4, 5, 4, 3
    for (int k = 0; k < 4; ++k) {
        EXPECT_TRUE(o.present[k]);
        ASSERT_EQ(o.f[k].size(), 59);
        EXPECT_TRUE(o.f[k].allFinite());
    }
    const OrientationFeatures strict = extract_features(generate(spec), {5});
    EXPECT_EQ(strict.stack_count, (std::array<int, 4>{5, 1, 5, 1}));
}

TEST(ExtractFeatures, AbsentOrientation) {
    SynthSpec spec;
    spec.angular = {2, 5};
    spec.spatial = {24, 24};
    const OrientationFeatures o = extract_features(generate(spec));
    EXPECT_TRUE(o.present[0]);
    EXPECT_FALSE(o.present[1]);
    EXPECT_FALSE(o.present[2]);
    EXPECT_FALSE(o.present[3]);
    const PooledFeatures p = pool(o);
    EXPECT_EQ(p.f_final, o.f[0]);
    EXPECT_EQ(p.weights[0], 1.0);
}

TEST(ExtractFeatures, Deterministic) {
    SynthSpec spec;
    spec.angular = {3, 3};
    spec.spatial = {24, 24};
    spec.seed = 9;
    const LightField lf = generate(spec);
    const auto a = extract_features(lf);
    const auto b = extract_features(lf);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(a.f[k], b.f[k]);
}

TEST(Pooling, IdenticalVectorsReturnedUnchanged) {
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(59, -3.3, 7.1);
    v(4) = 0.1;  // a value not exactly representable
    const PooledFeatures p = pool(orient_of({v, v, v, v}));
    EXPECT_EQ(p.f_final, v);
    const PooledFeatures q = pool(orient_of({v, v, v, v}), {0.1, 0.2, 0.3, 0.4});
    EXPECT_EQ(q.f_final, v);
}

TEST(Pooling, WeightsSelectAndAverage) {
    std::array<Eigen::VectorXd, 4> f;
    for (int k = 0; k < 4; ++k) f[k] = Eigen::VectorXd::Constant(3, 0.0), f[k](0) = 1.0 * (k == 0), f[k](1) = k;
    const PooledFeatures only0 = pool(orient_of(f), {1, 0, 0, 0});
    EXPECT_EQ(only0.f_final, f[0]);
    const PooledFeatures avg = pool(orient_of(f));
    EXPECT_DOUBLE_EQ(avg.f_final(0), 0.25);
    EXPECT_DOUBLE_EQ(avg.f_final(1), 1.5);
    EXPECT_EQ(avg.weights, kDefaultWeights);
}

TEST(Pooling, PermutationIsBitwiseInvariant) {
    std::array<Eigen::VectorXd, 4> f;
    for (int k = 0; k < 4; ++k) f[k] = Eigen::VectorXd::LinSpaced(59, 0.1 * k, 1.0 / (k + 3));
    const std::array<double, 4> w{0.1, 0.2, 0.3, 0.4};
    const PooledFeatures a = pool(orient_of(f), w);
    const PooledFeatures b = pool(orient_of({f[3], f[1], f[0], f[2]}), {w[3], w[1], w[0], w[2]});
    EXPECT_EQ(a.f_final, b.f_final);
}

TEST(Pooling, RenormalisesOverPresent) {
    std::array<Eigen::VectorXd, 4> f;
    for (int k = 0; k < 4; ++k) f[k] = Eigen::VectorXd::Constant(2, k + 1.0);
    const PooledFeatures p = pool(orient_of(f, {true, false, true, false}));
    EXPECT_DOUBLE_EQ(p.f_final(0), 2.0);
    EXPECT_DOUBLE_EQ(p.weights[0], 0.5);
    EXPECT_EQ(p.weights[1], 0.0);
}

TEST(Pooling, InvalidWeightsThrow) {
    std::array<Eigen::VectorXd, 4> f;
    for (auto& v : f) v = Eigen::VectorXd::Ones(2);
    EXPECT_THROW((void)pool(orient_of(f), {-0.1, 0.5, 0.3, 0.3}), ContractError);
    EXPECT_THROW((void)pool(orient_of(f), {0, 0, 0, 0}), ContractError);
    EXPECT_THROW((void)pool(orient_of(f, {false, true, true, true}), {1, 0, 0, 0}), ContractError);
}

}  // namespace
}  // namespace lfiqa
