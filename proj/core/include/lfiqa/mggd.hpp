#pragma once

#include <Eigen/Core>

namespace lfiqa {

/// Multivariate generalised Gaussian with density generator
/// exp(-0.5 (x^T M^-1 x / gamma)^phi); phi = 1 is the Gaussian.
struct MggdParams {
    Eigen::MatrixXd scatter;  // N x N, trace normalised to N
    double gamma = 0.0;
    double phi = 1.0;
    int n = 0;
    int iterations = 0;
    bool converged = false;
    bool regularized = false;  // singular sample covariance, 1e-8 I added
    bool degenerate = false;   // no usable (nonzero) vectors
};

struct MggdOptions {
    int max_iters = 100;
    double tol = 1e-6;  // Frobenius change of the scatter matrix
    double phi_min = 0.1;
    double phi_max = 5.0;
};

/// Maximum-likelihood fit after Pascal et al.: the trace-normalised scatter
/// fixed point alternates with a profile-likelihood maximisation over phi;
/// gamma follows from E[x^T M^-1 x]. Rows of `vectors` are samples. Exactly
/// zero rows carry no direction and are dropped. Needs at least 10 N^2 rows.
[[nodiscard]] MggdParams fit_mggd(const Eigen::MatrixXd& vectors, MggdOptions options = {});

}  // namespace lfiqa
