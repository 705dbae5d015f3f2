#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/tensor3.hpp"
#include "lfiqa/viewstack.hpp"

namespace lfiqa {

struct TuckerFactors {
    Eigen::MatrixXd U1;  // K1 x R1
    Eigen::MatrixXd U2;  // K2 x R2
    Eigen::MatrixXd U3;  // K3 x R3
    Tensor3 core;        // R1 x R2 x R3
    std::vector<double> fit_history;  // entry 0 is the HOSVD fit, then one per HOOI sweep
    int sweeps = 0;
    bool converged = false;
};

struct TuckerOptions {
    int max_iters = 50;
    double tol = 1e-6;
};

/// HOSVD initialisation followed by HOOI sweeps. fit = 1 - |t - t_hat| / |t|.
/// A zero tensor yields a zero core and canonical (identity) factors.
[[nodiscard]] TuckerFactors tucker_als(const Tensor3& t, std::array<Eigen::Index, 3> ranks,
                                       TuckerOptions options = {});

/// core x1 U1 x2 U2 x3 U3.
[[nodiscard]] Tensor3 reconstruct(const TuckerFactors& f);

/// Leading r left singular vectors of m (columns sign-fixed to a nonnegative sum).
[[nodiscard]] Eigen::MatrixXd leading_left_singular_vectors(const Eigen::MatrixXd& m, Eigen::Index r);

/// Negates every column whose entries sum to a negative value. A column
/// summing to exactly zero gets its first nonzero entry made positive.
void fix_column_signs(Eigen::MatrixXd& m);

/// Angular decomposition components of a view stack, energy-ordered.
struct ComponentStack {
    Tensor3 components;            // X x Y x V, slice 0 is the first principal component
    Eigen::VectorXd energies;      // squared Frobenius norm of each slice, descending
    Eigen::MatrixXd angular_factor;  // V x V, column r generates slice r

    [[nodiscard]] double energy_fraction(Eigen::Index r = 0) const;
};

/// Full-rank components computed as C x3 U3^T, with U3 taken from the
/// eigendecomposition of the V x V Gram matrix of the mode-3 unfolding.
[[nodiscard]] ComponentStack angular_components(const ViewStack& stack);
[[nodiscard]] ComponentStack angular_components(const Tensor3& stack);

/// Same quantity via full-rank tucker_als and G x1 U1 x2 U2. Slow; used to
/// cross-check the fast path.
[[nodiscard]] ComponentStack angular_components_general(const Tensor3& stack);

/// Slice 0 of angular_components.
[[nodiscard]] Plane first_principal_component(const ViewStack& stack);

/// First principal component divided by the sum of its angular weights, so
/// that it is a weighted average of the views on the views' own scale. This
/// is the image the feature extractors consume. Falls back to the unscaled
/// component when the weights sum to zero.
[[nodiscard]] Plane principal_image(const ViewStack& stack);

}  // namespace lfiqa
