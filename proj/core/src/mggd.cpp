#include "lfiqa/mggd.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace {

constexpr double kRegularization = 1e-8;

// Negative profile log-likelihood per sample, with gamma at its ML value for
// the given phi. Constant terms are dropped.
double neg_profile_loglik(double phi, const std::vector<double>& log_u, double dim) {
    double max_term = -std::numeric_limits<double>::infinity();
    for (double lu : log_u) max_term = std::max(max_term, phi * lu);
    double acc = 0.0;
    for (double lu : log_u) acc += std::exp(phi * lu - max_term);
    const double log_s = max_term + std::log(acc);
    const double n = static_cast<double>(log_u.size());
    const double log_gamma_ml = (std::log(phi) + log_s - std::log(n * dim)) / phi;
    const double ll = std::log(phi) - dim / (2.0 * phi) * std::log(2.0) - 0.5 * dim * log_gamma_ml -
                      std::lgamma(dim / (2.0 * phi)) - dim / (2.0 * phi);
    return -ll;
}

double best_phi(const std::vector<double>& log_u, double dim, const MggdOptions& o) {
    auto f = [&](double phi) { return neg_profile_loglik(phi, log_u, dim); };
    auto [phi, value] = boost::math::tools::brent_find_minima(f, o.phi_min, o.phi_max, 40);
    // Brent stays strictly inside the bracket; check the ends explicitly.
    for (double edge : {o.phi_min, o.phi_max}) {
        const double v = f(edge);
        if (v < value) {
            value = v;
            phi = edge;
        }
    }
    return phi;
}

Eigen::MatrixXd trace_normalize(const Eigen::MatrixXd& m) {
    return m * (static_cast<double>(m.rows()) / m.trace());
}

}  // namespace

MggdParams fit_mggd(const Eigen::MatrixXd& vectors, MggdOptions options) {
    const Eigen::Index dim = vectors.cols();
    if (dim < 1) throw ContractError("MGGD vectors need at least one coordinate");
    if (vectors.rows() < 10 * dim * dim) {
        throw ContractError("MGGD fit needs at least 10 N^2 vectors");
    }
    if (!vectors.allFinite()) throw ContractError("MGGD vectors must be finite");

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        if (vectors.row(i).squaredNorm() > 0.0) keep.push_back(i);
    }
    MggdParams p;
    p.n = static_cast<int>(dim);
    if (keep.size() <= static_cast<std::size_t>(dim)) {
        p.scatter = Eigen::MatrixXd::Identity(dim, dim);
        p.phi = 1.0;
        p.gamma = 0.0;
        p.degenerate = true;
        p.regularized = true;
        return p;
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(keep.size()), dim);
    for (std::size_t i = 0; i < keep.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = vectors.row(keep[i]);
    const Eigen::Index n = x.rows();
    const double nd = static_cast<double>(dim);

    Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
    const double max_eig = eig.eigenvalues().maxCoeff();
    p.regularized = !(eig.eigenvalues().minCoeff() > 1e-12 * max_eig);
    const Eigen::MatrixXd reg =
        p.regularized ? Eigen::MatrixXd(kRegularization * Eigen::MatrixXd::Identity(dim, dim))
                      : Eigen::MatrixXd::Zero(dim, dim);

    Eigen::VectorXd u(n);
    std::vector<double> log_u(static_cast<std::size_t>(n));
    auto update_u = [&](const Eigen::MatrixXd& m) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(m + reg);
        if (ldlt.info() != Eigen::Success) throw NumericError("MGGD scatter factorisation failed");
        const Eigen::MatrixXd solved = ldlt.solve(x.transpose());  // N x n
        u = (x.transpose().array() * solved.array()).colwise().sum().transpose();
        for (Eigen::Index i = 0; i < n; ++i) {
            u(i) = std::max(u(i), std::numeric_limits<double>::min());
            log_u[static_cast<std::size_t>(i)] = std::log(u(i));
        }
    };

    Eigen::MatrixXd m = trace_normalize(cov);
    for (int it = 0; it < options.max_iters; ++it) {
        update_u(m);
        p.phi = best_phi(log_u, nd, options);
        Eigen::VectorXd w(n);
        double max_term = -std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i) max_term = std::max(max_term, p.phi * log_u[static_cast<std::size_t>(i)]);
        // Weights u^(phi-1) / sum(u^phi), both scaled by exp(-max_term) to stay finite.
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += std::exp(p.phi * log_u[static_cast<std::size_t>(i)] - max_term);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double lu = log_u[static_cast<std::size_t>(i)];
            w(i) = std::exp((p.phi - 1.0) * lu - max_term) / s;
        }
        Eigen::MatrixXd next = trace_normalize(x.transpose() * w.asDiagonal() * x);
        next = 0.5 * (next + next.transpose());
        const double change = (next - m).norm();
        m = std::move(next);
        p.iterations = it + 1;
        if (change < options.tol) {
            p.converged = true;
            break;
        }
    }
    update_u(m);
    p.phi = best_phi(log_u, nd, options);
    p.scatter = m;
    const double mean_u = u.mean();
    p.gamma = mean_u *
              std::exp(std::lgamma(nd / (2.0 * p.phi)) - std::lgamma((nd + 2.0) / (2.0 * p.phi)) -
                       std::log(2.0) / p.phi);
    return p;
}

}  // namespace lfiqa
