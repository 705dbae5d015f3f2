#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/logistic.hpp"

namespace lfiqa {

struct SvrHyper {
    double c = 1.0;
    double g = 1.0;  // RBF width: k(u, v) = exp(-g |u - v|^2)
    double epsilon = 0.1;
};

struct SvrSolverOptions {
    double tol = 1e-3;  // KKT violation tolerance
    long max_iter = 10'000'000;
};

/// Trained epsilon-SVR on already normalised features.
struct SvrModel {
    SvrHyper hyper;
    Eigen::MatrixXd support;  // rows are support vectors
    Eigen::VectorXd coef;     // alpha_i - alpha_i^*
    double bias = 0.0;
    long iterations = 0;
    bool converged = true;

    [[nodiscard]] double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// SMO on the dual with second-order working-set selection. `kernel` is the
/// precomputed n x n RBF Gram matrix of the training rows of x.
[[nodiscard]] SvrModel svr_fit_kernel(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::MatrixXd& kernel,
                                      const SvrHyper& hyper, SvrSolverOptions options = {});
[[nodiscard]] SvrModel svr_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const SvrHyper& hyper,
                               SvrSolverOptions options = {});

[[nodiscard]] Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct SvrGrid {
    std::vector<double> c;  // default 2^-5, 2^-3, ..., 2^15
    std::vector<double> g;  // default 2^-15, 2^-13, ..., 2^3
    double epsilon = 0.1;

    [[nodiscard]] static SvrGrid standard();
};

struct SvrTrainOptions {
    SvrGrid grid = SvrGrid::standard();
    int folds = 5;
    std::uint64_t seed = 1;
    SvrSolverOptions solver;
};

/// Normalisation statistics plus regressor plus optional score mapping.
struct QualityModel {
    int version = 1;
    std::vector<std::string> feature_names;
    Eigen::VectorXd feat_mean;
    Eigen::VectorXd feat_std;
    std::vector<bool> constant_feature;  // std replaced by 1
    SvrModel svr;
    double cv_srcc = 0.0;  // inner cross-validation score of the chosen hyperparameters
    std::optional<LogisticParams> logistic;

    [[nodiscard]] Eigen::Index dim() const { return feat_mean.size(); }
    [[nodiscard]] Eigen::VectorXd normalize(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// z-scores the features, then picks (C, g) by k-fold cross-validation
/// maximising the SRCC of the pooled out-of-fold predictions (first grid
/// point wins ties) and refits on all rows. When `groups` is given, folds
/// never split a group. Needs at least 8 rows and non-constant labels.
[[nodiscard]] QualityModel svr_train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                     const std::vector<std::string>* groups = nullptr, SvrTrainOptions options = {});

[[nodiscard]] double svr_predict(const QualityModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
[[nodiscard]] Eigen::VectorXd svr_predict_batch(const QualityModel& model, const Eigen::MatrixXd& x);

/// Fold index per row, balanced and seeded. With groups, whole groups are assigned.
[[nodiscard]] std::vector<int> assign_folds(std::size_t rows, int folds, std::uint64_t seed,
                                            const std::vector<std::string>* groups = nullptr);

}  // namespace lfiqa
