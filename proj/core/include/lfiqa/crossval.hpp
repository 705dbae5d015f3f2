#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/svr.hpp"

namespace lfiqa {

enum class SplitMode { by_scene, by_item };

struct Dataset {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::vector<std::string> scenes;
};

struct CrossValOptions {
    int iterations = 1000;
    double train_frac = 0.8;
    SplitMode split = SplitMode::by_scene;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    SvrTrainOptions svr;  // its seed is replaced per iteration
    int max_resamples = 100;  // per iteration, for splits with too small a test fold
};

struct IterationRecord {
    int iteration = 0;
    double srcc = 0.0;
    double lcc = 0.0;
    double rmse = 0.0;
    double or_ratio = 0.0;
    int n_train = 0;
    int n_test = 0;
    double c = 0.0;
    double g = 0.0;
    bool logistic = false;  // false when the test fold was too small or the mapping degenerate
    int resamples = 0;
};

struct EvalSummary {
    double srcc = 0.0;
    double lcc = 0.0;
    double rmse = 0.0;
    double or_ratio = 0.0;
    std::vector<IterationRecord> iterations;
    int resampled = 0;
};

[[nodiscard]] double median(std::vector<double> v);

/// Train/test split of one iteration; returns (train rows, test rows).
[[nodiscard]] std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_rows(
    const Dataset& data, SplitMode mode, double train_frac, std::uint64_t seed);

/// Repeated random train/test evaluation with median aggregation. Each
/// iteration derives its own seed from (seed, iteration), so the result does
/// not depend on the thread count.
[[nodiscard]] EvalSummary cross_validate(const Dataset& data, const CrossValOptions& options);

}  // namespace lfiqa
