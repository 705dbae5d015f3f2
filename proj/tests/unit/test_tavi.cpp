#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "lfiqa/error.hpp"
#include "lfiqa/tavi.hpp"
#include "lfiqa/tucker.hpp"
#include "support/test_support.hpp"

namespace lfiqa {
namespace {

ViewStack make_stack(const std::vector<Plane>& views) {
    ViewStack st;
    st.data = Tensor3::from_slices(views);
    for (std::size_t k = 0; k < views.size(); ++k) st.coords.push_back({1, static_cast<int>(k) + 1});
    return st;
}

SsCurve curve_of(std::vector<double> values) {
    SsCurve c;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) c.positions.push_back(n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
    c.values = std::move(values);
    return c;
}

// Cooc oracle: explicit list of both-direction pairs, then the textbook sums.
CoocFeatures naive_cooc(const std::vector<double>& v, int levels) {
    std::vector<int> q;
    for (double x : v) q.push_back(std::min(levels - 1, static_cast<int>(std::clamp(x, 0.0, 1.0) * levels)));
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        pairs.emplace_back(q[i], q[i + 1]);
        pairs.emplace_back(q[i + 1], q[i]);
    }
    CoocFeatures f;
    for (int l = 0; l < levels; ++l)
        for (int h = 0; h < levels; ++h) {
            double count = 0.0;
            for (const auto& p : pairs) count += (p.first == l && p.second == h);
            const double p = count / static_cast<double>(pairs.size());
            f.contrast += (l - h) * (l - h) * p;
            f.asm_ += p * p;
            if (p > 0) f.entropy -= p * std::log(p);
            f.idm += p / (1.0 + (l - h) * (l - h));
        }
    return f;
}

TEST(SsCurve, IdenticalViewsGiveFlatOnes) {
    const Plane v = testing::random_plane(16, 16, 1, 0.0, 100.0);
    const ViewStack st = make_stack({v, v, v, v, v});
    const SsCurve c = ss_curve(st, principal_image(st), 100.0);
    ASSERT_EQ(c.values.size(), 5u);
    for (double s : c.values) EXPECT_NEAR(s, 1.0, 1e-9);
    EXPECT_NEAR(curve_std(c), 0.0, 1e-9);
    EXPECT_EQ(c.positions.front(), 0.0);
    EXPECT_EQ(c.positions.back(), 1.0);
    EXPECT_DOUBLE_EQ(c.positions[1], 0.25);
}

TEST(SsCurve, SingleViewPositionZero) {
    const Plane v = testing::random_plane(12, 12, 2, 0.0, 100.0);
    const ViewStack st = make_stack({v});
    const SsCurve c = ss_curve(st, v, 100.0);
    EXPECT_EQ(c.positions, std::vector<double>{0.0});
    EXPECT_NEAR(c.values[0], 1.0, 1e-12);
}

TEST(QuadFit, ExactParabola) {
    std::vector<double> v;
    for (int i = 0; i < 9; ++i) {
        const double p = i / 8.0;
        v.push_back(0.3 * p * p - 0.2 * p + 0.9);
    }
    const QuadFit q = fit_quadratic(curve_of(v));
    EXPECT_NEAR(q.f1, 0.3, 1e-12);
    EXPECT_NEAR(q.f2, -0.2, 1e-12);
    EXPECT_NEAR(q.f3, 0.9, 1e-12);
    EXPECT_NEAR(q.residual_rms, 0.0, 1e-12);
}

TEST(QuadFit, FivePointParabola) {
    const QuadFit q = fit_quadratic(curve_of({0.5, 0.375, 0.5, 0.875, 1.5}));
    EXPECT_NEAR(q.f1, 2.0, 1e-9);
    EXPECT_NEAR(q.f2, -1.0, 1e-9);
    EXPECT_NEAR(q.f3, 0.5, 1e-9);
    EXPECT_LT(q.residual_rms, 1e-9);
}

TEST(QuadFit, ReorderInvariant) {
    const SsCurve c = curve_of({0.9, 0.7, 0.95, 0.8, 0.85, 0.99});
    SsCurve r;
    for (std::size_t i : {3u, 0u, 5u, 1u, 4u, 2u}) {
        r.values.push_back(c.values[i]);
        r.positions.push_back(c.positions[i]);
    }
    const QuadFit a = fit_quadratic(c);
    const QuadFit b = fit_quadratic(r);
    EXPECT_NEAR(a.f1, b.f1, 1e-12);
    EXPECT_NEAR(a.f2, b.f2, 1e-12);
    EXPECT_NEAR(a.f3, b.f3, 1e-12);
}

TEST(QuadFit, ResidualMatchesGridSearch) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.6, 1.0);
    std::vector<double> v(9);
    for (double& x : v) x = u(rng);
    const SsCurve c = curve_of(v);
    auto rms = [&](double a, double b, double k) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double p = c.positions[i];
            s += (a * p * p + b * p + k - v[i]) * (a * p * p + b * p + k - v[i]);
        }
        return std::sqrt(s / static_cast<double>(v.size()));
    };
    // Exhaustive grid over a box, then repeated zooming around the best cell.
    double ca = 0.0;
    double cb = 0.0;
    double ck = 0.8;
    double span = 4.0;
    double best = rms(ca, cb, ck);
    for (int round = 0; round < 40; ++round) {
        const double step = span / 10.0;
        double na = ca;
        double nb = cb;
        double nk = ck;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j)
                for (int l = -10; l <= 10; ++l) {
                    const double r = rms(ca + i * step, cb + j * step, ck + l * step);
                    if (r < best) {
                        best = r;
                        na = ca + i * step;
                        nb = cb + j * step;
                        nk = ck + l * step;
                    }
                }
        ca = na;
        cb = nb;
        ck = nk;
        span *= 0.5;
    }
    EXPECT_NEAR(fit_quadratic(c).residual_rms, best, 1e-6);
}

TEST(QuadFit, ConstantCurve) {
    const QuadFit q = fit_quadratic(curve_of({0.7, 0.7, 0.7, 0.7}));
    EXPECT_NEAR(q.f1, 0.0, 1e-12);
    EXPECT_NEAR(q.f2, 0.0, 1e-12);
    EXPECT_NEAR(q.f3, 0.7, 1e-12);
}

TEST(QuadFit, MatchesNormalEquations) {
    const std::vector<double> v{0.91, 0.95, 0.97, 0.99, 0.98, 0.96, 0.94};
    const SsCurve c = curve_of(v);
    // Normal equations sum(p^(i+j)) x = sum(p^i v), solved by Cramer's rule.
    double m[3][3] = {};
    double r[3] = {};
    for (std::size_t n = 0; n < v.size(); ++n) {
        const double pw[3] = {c.positions[n] * c.positions[n], c.positions[n], 1.0};
        for (int i = 0; i < 3; ++i) {
            r[i] += pw[i] * v[n];
            for (int j = 0; j < 3; ++j) m[i][j] += pw[i] * pw[j];
        }
    }
    auto det = [](const double x[3][3]) {
        return x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
               x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
    };
    double sol[3];
    for (int col = 0; col < 3; ++col) {
        double mc[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mc[i][j] = j == col ? r[i] : m[i][j];
        sol[col] = det(mc) / det(m);
    }
    const double a = sol[0];
    const double b = sol[1];
    const double k = sol[2];
    const QuadFit q = fit_quadratic(c);
    EXPECT_NEAR(q.f1, a, 1e-6);
    EXPECT_NEAR(q.f2, b, 1e-6);
    EXPECT_NEAR(q.f3, k, 1e-6);
    EXPECT_LT(q.f1, 0.0);
}

TEST(QuadFit, TooFewPointsThrow) { EXPECT_THROW((void)fit_quadratic(curve_of({0.5, 0.6})), ContractError); }

TEST(Cooc, ConstantCurve) {
    const CoocFeatures f = cooc_features(curve_of({0.95, 0.95, 0.95, 0.95}));
    EXPECT_EQ(f.contrast, 0.0);
    EXPECT_EQ(f.asm_, 1.0);
    EXPECT_EQ(f.entropy, 0.0);
    EXPECT_EQ(f.idm, 1.0);
}

TEST(Cooc, AlternatingLevels) {
    // Levels 0 and 7 alternate: every pair has |l - h| = 7.
    const CoocFeatures f = cooc_features(curve_of({0.0, 1.0, 0.0, 1.0, 0.0}));
    EXPECT_NEAR(f.contrast, 49.0, 1e-12);
    EXPECT_NEAR(f.asm_, 0.5, 1e-12);
    EXPECT_NEAR(f.entropy, std::log(2.0), 1e-12);
    EXPECT_NEAR(f.idm, 1.0 / 50.0, 1e-12);
}

TEST(Cooc, MatchesNaiveOracle) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.1, 1.1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(3 + trial % 9);
        for (double& x : v) x = u(rng);
        const CoocFeatures got = cooc_features(curve_of(v));
        const CoocFeatures want = naive_cooc(v, 8);
        EXPECT_NEAR(got.contrast, want.contrast, 1e-12);
        EXPECT_NEAR(got.asm_, want.asm_, 1e-12);
        EXPECT_NEAR(got.entropy, want.entropy, 1e-12);
        EXPECT_NEAR(got.idm, want.idm, 1e-12);
    }
}

TEST(Cooc, ReversalInvariant) {
    std::vector<double> v{0.2, 0.5, 0.55, 0.9, 0.1, 0.7};
    const CoocFeatures a = cooc_features(curve_of(v));
    std::reverse(v.begin(), v.end());
    const CoocFeatures b = cooc_features(curve_of(v));
    EXPECT_NEAR(a.contrast, b.contrast, 1e-15);
    EXPECT_NEAR(a.entropy, b.entropy, 1e-15);
}

TEST(Tavi, IdenticalViewsAndLayout) {
    std::array<ViewStack, 3> stacks;
    std::array<Plane, 3> pcs;
    for (int n = 0; n < 3; ++n) {
        const Plane v = testing::random_plane(16, 16, 10 + n, n == 0 ? 0.0 : -50.0, n == 0 ? 100.0 : 50.0);
        stacks[n] = make_stack({v, v, v, v});
        pcs[n] = principal_image(stacks[n]);
    }
    const auto f = tavi_features({&stacks[0], &stacks[1], &stacks[2]}, pcs);
    ASSERT_EQ(f.size(), static_cast<std::size_t>(kTaviFeatureCount));
    for (int n = 0; n < 3; ++n) {
        const double* c = &f[static_cast<std::size_t>(7 * n)];
        EXPECT_NEAR(c[0], 0.0, 1e-8);  // f1
        EXPECT_NEAR(c[1], 0.0, 1e-8);  // f2
        EXPECT_NEAR(c[2], 1.0, 1e-8);  // f3
        EXPECT_EQ(c[3], 0.0);           // contrast
        EXPECT_EQ(c[4], 1.0);           // asm
        EXPECT_EQ(c[5], 0.0);           // entropy
        EXPECT_EQ(c[6], 1.0);           // idm
    }
}

TEST(Tavi, ShortStackThrows) {
    const Plane v = Plane::Constant(16, 16, 1.0);
    ViewStack st = make_stack({v, v});
    std::array<Plane, 3> pcs{v, v, v};
    EXPECT_THROW((void)tavi_features({&st, &st, &st}, pcs), ContractError);
}

}  // namespace
}  // namespace lfiqa
