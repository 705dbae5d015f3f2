#pragma once

#include <span>

namespace lfiqa {

/// Zero-mode asymmetric generalised Gaussian parameters.
struct AggdParams {
    double alpha = 0.0;
    double sigma_l = 0.0;
    double sigma_r = 0.0;
    double eta = 0.0;
    bool degenerate = false;  // all-zero input, fallback values

    [[nodiscard]] double beta_l() const;
    [[nodiscard]] double beta_r() const;
};

inline constexpr double kAggdAlphaMin = 0.2;
inline constexpr double kAggdAlphaMax = 10.0;
inline constexpr double kAggdAlphaStep = 1e-3;

/// Generalised Gaussian ratio Gamma(2/a)^2 / (Gamma(1/a) Gamma(3/a)); increasing in a.
[[nodiscard]] double ggd_ratio(double alpha);

/// Moment-matching fit. Needs at least 100 samples. Negative samples feed
/// sigma_l, positive ones sigma_r, zeros only the pooled moments. An empty
/// side gets sigma 0; an all-zero input returns alpha = 0.2 with the
/// degenerate flag set. The result is independent of sample order, and
/// negating the samples swaps the scales and negates eta exactly.
[[nodiscard]] AggdParams fit_aggd(std::span<const double> samples);

}  // namespace lfiqa
