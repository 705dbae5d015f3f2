#include "lfiqa/tensor3.hpp"

#include <string>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace {

void check_mode(int mode) {
    if (mode < 1 || mode > 3) {
        throw ContractError("tensor mode must be 1, 2 or 3, got " + std::to_string(mode));
    }
}

}  // namespace

Tensor3::Tensor3(Eigen::Index k1, Eigen::Index k2, Eigen::Index k3, double fill)
    : dims_{k1, k2, k3} {
    if (k1 < 0 || k2 < 0 || k3 < 0) {
        throw ContractError("tensor dimensions must be non-negative");
    }
    data_.assign(static_cast<std::size_t>(k1 * k2 * k3), fill);
}

Tensor3 Tensor3::from_slices(std::span<const Plane> slices) {
    if (slices.empty()) {
        throw ContractError("cannot build a tensor from zero slices");
    }
    const auto rows = slices.front().rows();
    const auto cols = slices.front().cols();
    Tensor3 t(rows, cols, static_cast<Eigen::Index>(slices.size()));
    for (std::size_t k = 0; k < slices.size(); ++k) {
        if (slices[k].rows() != rows || slices[k].cols() != cols) {
            throw ContractError("tensor slices differ in size");
        }
        t.slice(static_cast<Eigen::Index>(k)) = slices[k];
    }
    return t;
}

Eigen::Map<const Eigen::MatrixXd> Tensor3::slice(Eigen::Index k) const {
    return {data_.data() + dims_[0] * dims_[1] * k, dims_[0], dims_[1]};
}

Eigen::Map<Eigen::MatrixXd> Tensor3::slice(Eigen::Index k) {
    return {data_.data() + dims_[0] * dims_[1] * k, dims_[0], dims_[1]};
}

Eigen::Map<const Eigen::VectorXd> Tensor3::flat() const {
    return {data_.data(), size()};
}

Eigen::Map<Eigen::VectorXd> Tensor3::flat() {
    return {data_.data(), size()};
}

double Tensor3::squared_norm() const { return flat().squaredNorm(); }

double Tensor3::norm() const { return flat().norm(); }

Eigen::MatrixXd unfold(const Tensor3& t, int mode) {
    check_mode(mode);
    const auto [k1, k2, k3] = t.dims();
    switch (mode) {
        case 1: {
            // Storage order already is i + K1*(j + K2*k): a column-major K1 x (K2*K3) matrix.
            return Eigen::Map<const Eigen::MatrixXd>(t.flat().data(), k1, k2 * k3);
        }
        case 2: {
            Eigen::MatrixXd m(k2, k1 * k3);
            for (Eigen::Index k = 0; k < k3; ++k)
                for (Eigen::Index j = 0; j < k2; ++j)
                    for (Eigen::Index i = 0; i < k1; ++i) m(j, i + k1 * k) = t(i, j, k);
            return m;
        }
        default: {
            return Eigen::Map<const Eigen::MatrixXd>(t.flat().data(), k1 * k2, k3).transpose();
        }
    }
}

Tensor3 fold(const Eigen::MatrixXd& m, int mode, const Tensor3::Dims& dims) {
    check_mode(mode);
    const auto [k1, k2, k3] = dims;
    const Eigen::Index rows = dims[static_cast<std::size_t>(mode - 1)];
    if (m.rows() != rows || m.size() != k1 * k2 * k3) {
        throw ContractError("fold: matrix shape does not match target dimensions");
    }
    Tensor3 t(k1, k2, k3);
    switch (mode) {
        case 1:
            Eigen::Map<Eigen::MatrixXd>(t.flat().data(), k1, k2 * k3) = m;
            break;
        case 2:
            for (Eigen::Index k = 0; k < k3; ++k)
                for (Eigen::Index j = 0; j < k2; ++j)
                    for (Eigen::Index i = 0; i < k1; ++i) t(i, j, k) = m(j, i + k1 * k);
            break;
        default:
            Eigen::Map<Eigen::MatrixXd>(t.flat().data(), k1 * k2, k3) = m.transpose();
            break;
    }
    return t;
}

Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& m, int mode) {
    check_mode(mode);
    if (m.cols() != t.dim(mode)) {
        throw ContractError("mode_product: matrix has " + std::to_string(m.cols()) +
                            " columns but tensor mode " + std::to_string(mode) + " has size " +
                            std::to_string(t.dim(mode)));
    }
    Tensor3::Dims out_dims = t.dims();
    out_dims[static_cast<std::size_t>(mode - 1)] = m.rows();
    const auto [k1, k2, k3] = t.dims();

    if (mode == 1) {
        Tensor3 out(out_dims[0], out_dims[1], out_dims[2]);
        Eigen::Map<Eigen::MatrixXd>(out.flat().data(), m.rows(), k2 * k3) =
            m * Eigen::Map<const Eigen::MatrixXd>(t.flat().data(), k1, k2 * k3);
        return out;
    }
    if (mode == 3) {
        // out(:, :, r) = sum_k m(r, k) * t(:, :, k)
        Tensor3 out(out_dims[0], out_dims[1], out_dims[2]);
        Eigen::Map<Eigen::MatrixXd>(out.flat().data(), k1 * k2, m.rows()) =
            Eigen::Map<const Eigen::MatrixXd>(t.flat().data(), k1 * k2, k3) * m.transpose();
        return out;
    }
    // Mode 2: each slice is multiplied from the right by m^T.
    Tensor3 out(out_dims[0], out_dims[1], out_dims[2]);
    for (Eigen::Index k = 0; k < k3; ++k) {
        out.slice(k) = t.slice(k) * m.transpose();
    }
    return out;
}

}  // namespace lfiqa
