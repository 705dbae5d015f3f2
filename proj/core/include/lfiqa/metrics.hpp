#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/logistic.hpp"

namespace lfiqa {

/// Mid-ranks (1-based, ties share the average rank).
[[nodiscard]] Eigen::VectorXd mid_ranks(std::span<const double> v);

[[nodiscard]] double pearson(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double spearman(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double rmse(std::span<const double> a, std::span<const double> b);

/// Fraction of |mapped - mos| above 2 standard deviations of the residuals.
[[nodiscard]] double outlier_ratio(std::span<const double> mapped, std::span<const double> mos,
                                   double threshold_sigmas = 2.0);

struct Metrics {
    double srcc = 0.0;
    double lcc = 0.0;
    double rmse = 0.0;
    double or_ratio = 0.0;
};

/// SRCC on raw predictions; LCC, RMSE and OR on logistic-mapped predictions
/// when `fitted` is given, raw predictions otherwise.
[[nodiscard]] Metrics compute_metrics(std::span<const double> pred, std::span<const double> mos,
                                      const std::optional<LogisticParams>& fitted = std::nullopt);

}  // namespace lfiqa
