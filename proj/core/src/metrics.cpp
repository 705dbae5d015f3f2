#include "lfiqa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ContractError("metric inputs differ in length");
    if (a.size() < 2) throw ContractError("metrics need at least 2 items");
}

}  // namespace

Eigen::VectorXd mid_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    Eigen::VectorXd r(static_cast<Eigen::Index>(n));
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r(static_cast<Eigen::Index>(idx[k])) = rank;
        i = j + 1;
    }
    return r;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    check_pair(a, b);
    const Eigen::Map<const Eigen::VectorXd> x(a.data(), static_cast<Eigen::Index>(a.size()));
    const Eigen::Map<const Eigen::VectorXd> y(b.data(), static_cast<Eigen::Index>(b.size()));
    const Eigen::VectorXd dx = x.array() - x.mean();
    const Eigen::VectorXd dy = y.array() - y.mean();
    const double sxx = dx.squaredNorm();
    const double syy = dy.squaredNorm();
    if (!(sxx > 0.0) || !(syy > 0.0)) throw ContractError("correlation of a zero-variance sequence");
    return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> a, std::span<const double> b) {
    check_pair(a, b);
    const Eigen::VectorXd ra = mid_ranks(a);
    const Eigen::VectorXd rb = mid_ranks(b);
    return pearson({ra.data(), a.size()}, {rb.data(), b.size()});
}

double rmse(std::span<const double> a, std::span<const double> b) {
    check_pair(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / static_cast<double>(a.size()));
}

double outlier_ratio(std::span<const double> mapped, std::span<const double> mos, double threshold_sigmas) {
    check_pair(mapped, mos);
    const std::size_t n = mapped.size();
    std::vector<double> res(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        res[i] = mapped[i] - mos[i];
        mean += res[i];
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double r : res) var += (r - mean) * (r - mean);
    const double sigma = std::sqrt(var / static_cast<double>(n));
    std::size_t outliers = 0;
    for (double r : res) outliers += std::abs(r) > threshold_sigmas * sigma ? 1 : 0;
    return static_cast<double>(outliers) / static_cast<double>(n);
}

Metrics compute_metrics(std::span<const double> pred, std::span<const double> mos,
                        const std::optional<LogisticParams>& fitted) {
    check_pair(pred, mos);
    std::vector<double> mapped(pred.begin(), pred.end());
    if (fitted) {
        for (double& q : mapped) q = logistic_eval(*fitted, q);
    }
    Metrics m;
    m.srcc = spearman(pred, mos);
    m.lcc = pearson(mapped, mos);
    m.rmse = rmse(mapped, mos);
    m.or_ratio = outlier_ratio(mapped, mos);
    return m;
}

}  // namespace lfiqa
