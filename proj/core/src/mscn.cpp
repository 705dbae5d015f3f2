#include "lfiqa/mscn.hpp"

#include <cmath>

#include "lfiqa/error.hpp"

namespace lfiqa {

Eigen::MatrixXd gaussian_window(int half, double sigma) {
    const int size = 2 * half + 1;
    Eigen::MatrixXd w(size, size);
    for (int k = -half; k <= half; ++k)
        for (int l = -half; l <= half; ++l)
            w(k + half, l + half) = std::exp(-(k * k + l * l) / (2.0 * sigma * sigma));
    return w / w.sum();
}

MscnField mscn(const Plane& image) {
    MscnField f;
    const int half = f.window_halfsize;
    const int size = 2 * half + 1;
    const auto rows = image.rows();
    const auto cols = image.cols();
    if (rows < size || cols < size) {
        throw ContractError("MSCN needs an image of at least 7x7");
    }
    const Eigen::MatrixXd w = gaussian_window(half, f.window_sigma);
    f.coeffs.resize(rows, cols);
    Eigen::MatrixXd patch(size, size);
    for (Eigen::Index y = 0; y < cols; ++y) {
        for (Eigen::Index x = 0; x < rows; ++x) {
            const double centre = image(x, y);
            for (int l = 0; l < size; ++l) {
                const auto yy = reflect_index(y + l - half, cols);
                for (int k = 0; k < size; ++k) {
                    patch(k, l) = image(reflect_index(x + k - half, rows), yy) - centre;
                }
            }
            // Offsets relative to the centre pixel keep flat regions exactly zero.
            const double mu_offset = (w.array() * patch.array()).sum();
            const double var = (w.array() * (patch.array() - mu_offset).square()).sum();
            f.coeffs(x, y) = -mu_offset / (std::sqrt(var) + 1.0);
        }
    }
    return f;
}

}  // namespace lfiqa
