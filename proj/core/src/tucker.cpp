#include "lfiqa/tucker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lfiqa/error.hpp"

namespace lfiqa {

void fix_column_signs(Eigen::MatrixXd& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double sum = m.col(c).sum();
        bool flip = sum < 0.0;
        if (sum == 0.0) {
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                if (m(r, c) != 0.0) {
                    flip = m(r, c) < 0.0;
                    break;
                }
            }
        }
        if (flip) m.col(c) = -m.col(c);
    }
}

Eigen::MatrixXd leading_left_singular_vectors(const Eigen::MatrixXd& m, Eigen::Index r) {
    if (r < 1 || r > m.rows()) throw ContractError("requested rank exceeds matrix rows");
    // Eigen's SVD only returns a complete left basis with ComputeFullU; the
    // leading r columns of it are what HOSVD needs even when rows > cols.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    if (svd.info() != Eigen::Success) throw NumericError("SVD failed");
    Eigen::MatrixXd u = svd.matrixU().leftCols(r);
    fix_column_signs(u);
    return u;
}

namespace {

Eigen::MatrixXd canonical_factor(Eigen::Index k, Eigen::Index r) {
    return Eigen::MatrixXd::Identity(k, r);
}

Tensor3 project_core(const Tensor3& t, const Eigen::MatrixXd& u1, const Eigen::MatrixXd& u2,
                     const Eigen::MatrixXd& u3) {
    return mode_product(mode_product(mode_product(t, u1.transpose(), 1), u2.transpose(), 2), u3.transpose(), 3);
}

double fit_of(const Tensor3& t, const TuckerFactors& f, double norm) {
    Tensor3 r = reconstruct(f);
    return 1.0 - (t.flat() - r.flat()).norm() / norm;
}

}  // namespace

Tensor3 reconstruct(const TuckerFactors& f) {
    return mode_product(mode_product(mode_product(f.core, f.U1, 1), f.U2, 2), f.U3, 3);
}

TuckerFactors tucker_als(const Tensor3& t, std::array<Eigen::Index, 3> ranks, TuckerOptions options) {
    for (int n = 1; n <= 3; ++n) {
        const auto r = ranks[static_cast<std::size_t>(n - 1)];
        if (r < 1 || r > t.dim(n)) throw ContractError("Tucker rank out of range for mode " + std::to_string(n));
    }
    if (options.max_iters < 0) throw ContractError("max_iters must be non-negative");

    TuckerFactors f;
    const double norm = t.norm();
    if (norm == 0.0) {
        f.U1 = canonical_factor(t.dim(1), ranks[0]);
        f.U2 = canonical_factor(t.dim(2), ranks[1]);
        f.U3 = canonical_factor(t.dim(3), ranks[2]);
        f.core = Tensor3(ranks[0], ranks[1], ranks[2]);
        f.fit_history = {1.0};
        f.converged = true;
        return f;
    }

    f.U1 = leading_left_singular_vectors(unfold(t, 1), ranks[0]);
    f.U2 = leading_left_singular_vectors(unfold(t, 2), ranks[1]);
    f.U3 = leading_left_singular_vectors(unfold(t, 3), ranks[2]);
    f.core = project_core(t, f.U1, f.U2, f.U3);
    f.fit_history.push_back(fit_of(t, f, norm));

    for (int it = 0; it < options.max_iters; ++it) {
        f.U1 = leading_left_singular_vectors(
            unfold(mode_product(mode_product(t, f.U2.transpose(), 2), f.U3.transpose(), 3), 1), ranks[0]);
        f.U2 = leading_left_singular_vectors(
            unfold(mode_product(mode_product(t, f.U1.transpose(), 1), f.U3.transpose(), 3), 2), ranks[1]);
        f.U3 = leading_left_singular_vectors(
            unfold(mode_product(mode_product(t, f.U1.transpose(), 1), f.U2.transpose(), 2), 3), ranks[2]);
        f.core = project_core(t, f.U1, f.U2, f.U3);
        const double fit = fit_of(t, f, norm);
        const double previous = f.fit_history.back();
        f.fit_history.push_back(fit);
        ++f.sweeps;
        if (std::abs(fit - previous) < options.tol) {
            f.converged = true;
            break;
        }
    }
    return f;
}

double ComponentStack::energy_fraction(Eigen::Index r) const {
    const double total = energies.sum();
    return total > 0.0 ? energies(r) / total : (r == 0 ? 1.0 : 0.0);
}

namespace {

// comps(:,:,r) must be the component generated by u3.col(r).
ComponentStack order_components(Tensor3 comps, Eigen::MatrixXd u3) {
    const Eigen::MatrixXd raw = u3;
    fix_column_signs(u3);
    for (Eigen::Index r = 0; r < u3.cols(); ++r) {
        if (u3.col(r) != raw.col(r)) comps.slice(r) *= -1.0;
    }
    const Eigen::Index v = u3.cols();
    Eigen::VectorXd energy(v);
    for (Eigen::Index r = 0; r < v; ++r) energy(r) = comps.slice(r).squaredNorm();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(v));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return energy(a) > energy(b); });

    ComponentStack out;
    out.components = Tensor3(comps.dim(1), comps.dim(2), v);
    out.energies.resize(v);
    out.angular_factor.resize(u3.rows(), v);
    for (Eigen::Index r = 0; r < v; ++r) {
        const Eigen::Index src = order[static_cast<std::size_t>(r)];
        out.components.slice(r) = comps.slice(src);
        out.energies(r) = energy(src);
        out.angular_factor.col(r) = u3.col(src);
    }
    return out;
}

}  // namespace

ComponentStack angular_components(const Tensor3& stack) {
    if (stack.dim(3) < 1) throw ContractError("view stack is empty");
    const Eigen::Index v = stack.dim(3);
    const Eigen::Map<const Eigen::MatrixXd> x(stack.flat().data(), stack.dim(1) * stack.dim(2), v);
    const Eigen::MatrixXd gram = x.transpose() * x;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition of the angular Gram matrix failed");
    // Eigen sorts ascending; reverse to get the dominant direction first.
    Eigen::MatrixXd u3 = eig.eigenvectors().rowwise().reverse();
    Tensor3 comps = mode_product(stack, u3.transpose(), 3);
    return order_components(std::move(comps), std::move(u3));
}

ComponentStack angular_components(const ViewStack& stack) { return angular_components(stack.data); }

ComponentStack angular_components_general(const Tensor3& stack) {
    const TuckerFactors f = tucker_als(stack, {stack.dim(1), stack.dim(2), stack.dim(3)});
    Tensor3 comps = mode_product(mode_product(f.core, f.U1, 1), f.U2, 2);
    return order_components(std::move(comps), f.U3);
}

Plane first_principal_component(const ViewStack& stack) {
    ComponentStack cs = angular_components(stack);
    return cs.components.slice(0);
}

Plane principal_image(const ViewStack& stack) {
    ComponentStack cs = angular_components(stack);
    const double w = cs.angular_factor.col(0).sum();
    Plane pc = cs.components.slice(0);
    if (w > 0.0) pc /= w;
    return pc;
}

}  // namespace lfiqa
