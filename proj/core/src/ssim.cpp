#include "lfiqa/ssim.hpp"

#include <cmath>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace {

Eigen::VectorXd gaussian_1d(int size, double sigma) {
    Eigen::VectorXd g(size);
    const double c = (size - 1) / 2.0;
    for (int i = 0; i < size; ++i) g(i) = std::exp(-((i - c) * (i - c)) / (2.0 * sigma * sigma));
    return g / g.sum();
}

// Separable 'valid' correlation with kernel g along both axes.
Plane filter_valid(const Plane& m, const Eigen::VectorXd& g) {
    const auto w = g.size();
    const auto rows = m.rows() - w + 1;
    const auto cols = m.cols() - w + 1;
    Plane tmp(rows, m.cols());
    for (Eigen::Index y = 0; y < m.cols(); ++y)
        for (Eigen::Index x = 0; x < rows; ++x) tmp(x, y) = m.col(y).segment(x, w).dot(g);
    Plane out(rows, cols);
    for (Eigen::Index y = 0; y < cols; ++y) {
        out.col(y).setZero();
        for (Eigen::Index k = 0; k < w; ++k) out.col(y) += g(k) * tmp.col(y + k);
    }
    return out;
}

}  // namespace

Plane ssim_map(const Plane& a, const Plane& b, double dynamic_range, SsimOptions o) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractError("SSIM inputs differ in size");
    if (a.rows() < o.window || a.cols() < o.window) throw ContractError("SSIM needs images of at least 11x11");
    if (!(dynamic_range > 0.0)) throw ContractError("SSIM dynamic range must be positive");
    const Eigen::VectorXd g = gaussian_1d(o.window, o.sigma);
    const double c1 = (o.k1 * dynamic_range) * (o.k1 * dynamic_range);
    const double c2 = (o.k2 * dynamic_range) * (o.k2 * dynamic_range);

    const Plane mu_a = filter_valid(a, g);
    const Plane mu_b = filter_valid(b, g);
    const Plane e_aa = filter_valid(a.cwiseProduct(a), g);
    const Plane e_bb = filter_valid(b.cwiseProduct(b), g);
    const Plane e_ab = filter_valid(a.cwiseProduct(b), g);

    const auto ma = mu_a.array();
    const auto mb = mu_b.array();
    const auto var_a = e_aa.array() - ma * ma;
    const auto var_b = e_bb.array() - mb * mb;
    const auto cov = e_ab.array() - ma * mb;
    Plane out = ((2.0 * (ma * mb) + c1) * (2.0 * cov + c2) / (((ma * ma + mb * mb) + c1) * ((var_a + var_b) + c2))).matrix();
    return out;
}

double ssim(const Plane& a, const Plane& b, double dynamic_range, SsimOptions options) {
    return ssim_map(a, b, dynamic_range, options).mean();
}

}  // namespace lfiqa
