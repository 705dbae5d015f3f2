#include "lfiqa/aggd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace {

struct AlphaTable {
    std::vector<double> alpha;
    std::vector<double> ratio;

    AlphaTable() {
        const auto n = static_cast<std::size_t>(std::lround((kAggdAlphaMax - kAggdAlphaMin) / kAggdAlphaStep)) + 1;
        alpha.resize(n);
        ratio.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            alpha[i] = kAggdAlphaMin + static_cast<double>(i) * kAggdAlphaStep;
            ratio[i] = ggd_ratio(alpha[i]);
        }
    }

    // Bisection for the bracketing grid cell, then linear interpolation inside it.
    [[nodiscard]] double invert(double r) const {
        if (!(r > ratio.front())) return alpha.front();
        if (r >= ratio.back()) return alpha.back();
        std::size_t lo = 0;
        std::size_t hi = ratio.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (ratio[mid] <= r ? lo : hi) = mid;
        }
        const double frac = (r - ratio[lo]) / (ratio[hi] - ratio[lo]);
        return alpha[lo] + frac * (alpha[hi] - alpha[lo]);
    }
};

const AlphaTable& alpha_table() {
    static const AlphaTable table;
    return table;
}

double sorted_sum(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

double ggd_ratio(double alpha) {
    return std::exp(2.0 * std::lgamma(2.0 / alpha) - std::lgamma(1.0 / alpha) - std::lgamma(3.0 / alpha));
}

double AggdParams::beta_l() const {
    return sigma_l * std::sqrt(std::exp(std::lgamma(1.0 / alpha) - std::lgamma(3.0 / alpha)));
}

double AggdParams::beta_r() const {
    return sigma_r * std::sqrt(std::exp(std::lgamma(1.0 / alpha) - std::lgamma(3.0 / alpha)));
}

AggdParams fit_aggd(std::span<const double> samples) {
    if (samples.size() < 100) throw ContractError("AGGD fit needs at least 100 samples");
    std::vector<double> left_sq;
    std::vector<double> right_sq;
    std::vector<double> abs_all;
    abs_all.reserve(samples.size());
    for (double x : samples) {
        if (!std::isfinite(x)) throw ContractError("AGGD samples must be finite");
        if (x < 0.0) left_sq.push_back(x * x);
        else if (x > 0.0) right_sq.push_back(x * x);
        abs_all.push_back(std::abs(x));
    }
    const double n = static_cast<double>(samples.size());
    const double nl = static_cast<double>(left_sq.size());
    const double nr = static_cast<double>(right_sq.size());
    const double sum_l = sorted_sum(left_sq);
    const double sum_r = sorted_sum(right_sq);
    const double sum_abs = sorted_sum(abs_all);

    AggdParams p;
    if (left_sq.empty() && right_sq.empty()) {
        p.alpha = kAggdAlphaMin;
        p.degenerate = true;
        return p;
    }
    p.sigma_l = nl > 0 ? std::sqrt(sum_l / nl) : 0.0;
    p.sigma_r = nr > 0 ? std::sqrt(sum_r / nr) : 0.0;

    const double mean_abs = sum_abs / n;
    const double mean_sq = (sum_l + sum_r) / n;
    const double r_hat = mean_abs * mean_abs / mean_sq;
    const double l = p.sigma_l;
    const double r = p.sigma_r;
    const double l2r2 = l * l + r * r;
    // Equivalent to r_hat (g^3+1)(g+1)/(g^2+1)^2 with g = l/r, written symmetrically.
    const double big_r = r_hat * (l * l * l + r * r * r) * (l + r) / (l2r2 * l2r2);
    p.alpha = alpha_table().invert(big_r);
    const double g2 = std::exp(std::lgamma(2.0 / p.alpha) - std::lgamma(1.0 / p.alpha));
    p.eta = (p.beta_r() - p.beta_l()) * g2;
    return p;
}

}  // namespace lfiqa
