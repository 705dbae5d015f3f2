#pragma once

#include <functional>

#include <Eigen/Core>

namespace lfiqa {

struct NelderMeadOptions {
    int max_evals = 4000;
    double ftol = 1e-14;  // relative spread of simplex values
    double xtol = 1e-10;  // simplex diameter
    double initial_step = 0.1;  // relative to |x| (absolute when x is 0)
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evals = 0;
    bool converged = false;
};

/// Derivative-free simplex minimisation (standard reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5).
[[nodiscard]] NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x0, NelderMeadOptions options = {});

}  // namespace lfiqa
