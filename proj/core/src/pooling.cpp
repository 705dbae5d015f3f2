#include "lfiqa/pooling.hpp"

#include <algorithm>
#include <cmath>

#include "lfiqa/error.hpp"

namespace lfiqa {

PooledFeatures pool(const OrientationFeatures& orient, const std::array<double, 4>& weights) {
    std::array<double, 4> w{};
    Eigen::Index dim = -1;
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) throw ContractError("orientation weights must be nonnegative");
        if (weights[k] == 0.0 || !orient.present[k]) continue;
        if (dim < 0) dim = orient.f[k].size();
        if (orient.f[k].size() != dim) throw ContractError("orientation feature vectors differ in length");
        w[k] = weights[k];
        total += weights[k];
    }
    if (!(total > 0.0)) throw ContractError("no present orientation carries a positive weight");
    for (double& x : w) x /= total;

    PooledFeatures out;
    out.weights = w;
    out.f_final.resize(dim);
    std::array<double, 4> terms{};
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::size_t count = 0;
        bool all_equal = true;
        double first = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            if (w[k] == 0.0) continue;
            const double v = orient.f[k](j);
            if (count == 0) first = v;
            else if (v != first) all_equal = false;
            terms[count++] = w[k] * v;
        }
        if (all_equal) {
            out.f_final(j) = first;
            continue;
        }
        std::sort(terms.begin(), terms.begin() + static_cast<long>(count));
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += terms[i];
        out.f_final(j) = s;
    }
    return out;
}

}  // namespace lfiqa
