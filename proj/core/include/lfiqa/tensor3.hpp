#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/image.hpp"

namespace lfiqa {

/// Dense third-order tensor of doubles.
///
/// Storage is first-index-fastest: element (i, j, k) lives at
/// i + K1 * (j + K2 * k). A mode-3 slice is therefore a contiguous
/// column-major K1 x K2 block, which is exactly an image Plane.
class Tensor3 {
public:
    using Dims = std::array<Eigen::Index, 3>;

    Tensor3() = default;
    Tensor3(Eigen::Index k1, Eigen::Index k2, Eigen::Index k3, double fill = 0.0);

    /// Stacks equally sized planes along the third mode.
    static Tensor3 from_slices(std::span<const Plane> slices);

    [[nodiscard]] const Dims& dims() const { return dims_; }
    [[nodiscard]] Eigen::Index dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode - 1)); }
    [[nodiscard]] Eigen::Index size() const { return static_cast<Eigen::Index>(data_.size()); }
    [[nodiscard]] bool empty() const { return data_.empty(); }

    double& operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) {
        return data_[static_cast<std::size_t>(i + dims_[0] * (j + dims_[1] * k))];
    }
    double operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return data_[static_cast<std::size_t>(i + dims_[0] * (j + dims_[1] * k))];
    }

    [[nodiscard]] Eigen::Map<const Eigen::MatrixXd> slice(Eigen::Index k) const;
    [[nodiscard]] Eigen::Map<Eigen::MatrixXd> slice(Eigen::Index k);

    /// All elements as a flat vector in storage order.
    [[nodiscard]] Eigen::Map<const Eigen::VectorXd> flat() const;
    [[nodiscard]] Eigen::Map<Eigen::VectorXd> flat();

    [[nodiscard]] double squared_norm() const;
    [[nodiscard]] double norm() const;

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Dims dims_{0, 0, 0};
    std::vector<double> data_;
};

/// Mode-n unfolding (n in 1..3), K_n rows. Columns enumerate the remaining
/// two indices with the smaller mode varying fastest:
///   mode 1: column j + K2*k
///   mode 2: column i + K1*k
///   mode 3: column i + K1*j   (row k is slice k flattened column-major)
[[nodiscard]] Eigen::MatrixXd unfold(const Tensor3& t, int mode);

/// Inverse of unfold for the given target dimensions.
[[nodiscard]] Tensor3 fold(const Eigen::MatrixXd& m, int mode, const Tensor3::Dims& dims);

/// Mode-n product t x_n m, where m has t.dim(n) columns. The result has
/// m.rows() in place of dimension n.
[[nodiscard]] Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& m, int mode);

}  // namespace lfiqa
