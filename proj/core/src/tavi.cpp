#include "lfiqa/tavi.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "lfiqa/error.hpp"
#include "lfiqa/ssim.hpp"

namespace lfiqa {

SsCurve ss_curve(const ViewStack& stack, const Plane& pc, double dynamic_range) {
    const auto v = stack.data.dim(3);
    if (v < 1) throw ContractError("view stack is empty");
    if (pc.rows() != stack.data.dim(1) || pc.cols() != stack.data.dim(2)) {
        throw ContractError("principal image size differs from the stack views");
    }
    SsCurve c;
    c.values.reserve(static_cast<std::size_t>(v));
    c.positions.reserve(static_cast<std::size_t>(v));
    for (Eigen::Index i = 0; i < v; ++i) {
        c.values.push_back(ssim(stack.data.slice(i), pc, dynamic_range));
        c.positions.push_back(v == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(v - 1));
    }
    return c;
}

double curve_std(const SsCurve& curve) {
    if (curve.values.empty()) return 0.0;
    const Eigen::Map<const Eigen::VectorXd> v(curve.values.data(), static_cast<Eigen::Index>(curve.values.size()));
    const double mean = v.mean();
    return std::sqrt((v.array() - mean).square().mean());
}

QuadFit fit_quadratic(const SsCurve& curve) {
    const std::size_t n = curve.values.size();
    if (n < 3 || curve.positions.size() != n) throw ContractError("quadratic fit needs at least 3 curve points");
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const double p = curve.positions[i];
        const Eigen::Vector3d row(p * p, p, 1.0);
        ata += row * row.transpose();
        atb += row * curve.values[i];
    }
    const Eigen::Vector3d f = ata.fullPivLu().solve(atb);
    QuadFit q{f(0), f(1), f(2), 0.0};
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = curve.positions[i];
        const double r = curve.values[i] - (q.f1 * p * p + q.f2 * p + q.f3);
        ss += r * r;
    }
    q.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return q;
}

CoocFeatures cooc_features(const SsCurve& curve, int levels) {
    const std::size_t n = curve.values.size();
    if (n < 2) throw ContractError("co-occurrence features need at least 2 curve points");
    if (levels < 1) throw ContractError("co-occurrence needs at least one level");
    std::vector<int> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::clamp(curve.values[i], 0.0, 1.0);
        q[i] = std::min(levels - 1, static_cast<int>(std::floor(v * levels)));
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(levels, levels);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        p(q[i], q[i + 1]) += 1.0;
        p(q[i + 1], q[i]) += 1.0;
    }
    p /= p.sum();
    CoocFeatures f;
    for (int l = 0; l < levels; ++l) {
        for (int h = 0; h < levels; ++h) {
            const double v = p(l, h);
            const double d2 = static_cast<double>((l - h) * (l - h));
            f.contrast += d2 * v;
            f.asm_ += v * v;
            if (v > 0.0) f.entropy -= v * std::log(v);
            f.idm += v / (1.0 + d2);
        }
    }
    return f;
}

std::vector<double> tavi_features(const std::array<const ViewStack*, 3>& stacks, const std::array<Plane, 3>& pcs,
                                  const std::array<double, 3>& dynamic_ranges) {
    std::vector<double> out;
    out.reserve(kTaviFeatureCount);
    for (std::size_t n = 0; n < 3; ++n) {
        if (stacks[n] == nullptr) throw ContractError("missing channel stack");
        if (stacks[n]->length() < 3) throw ContractError("TAVI needs stacks of at least 3 views");
        const SsCurve c = ss_curve(*stacks[n], pcs[n], dynamic_ranges[n]);
        const QuadFit fit = fit_quadratic(c);
        const CoocFeatures co = cooc_features(c);
        out.insert(out.end(), {fit.f1, fit.f2, fit.f3, co.contrast, co.asm_, co.entropy, co.idm});
    }
    return out;
}

}  // namespace lfiqa
