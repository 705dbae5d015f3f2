#include "lfiqa/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "lfiqa/error.hpp"
#include "lfiqa/optimize.hpp"

namespace lfiqa {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             NelderMeadOptions o) {
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> vals(static_cast<std::size_t>(n + 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double step = x0(i) != 0.0 ? o.initial_step * std::abs(x0(i)) : o.initial_step;
        pts[static_cast<std::size_t>(i + 1)](i) += step;
    }
    NelderMeadResult r;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++r.evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(pts.size());
    while (r.evals < o.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).lpNorm<Eigen::Infinity>());
        const double spread = vals[worst] - vals[best];
        if (spread <= o.ftol * (std::abs(vals[best]) + 1e-300) + 1e-300 || diameter <= o.xtol) {
            r.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                           : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            vals[i] = eval(pts[i]);
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    r.x = pts[static_cast<std::size_t>(it - vals.begin())];
    r.value = *it;
    return r;
}

double logistic_eval(const LogisticParams& p, double q) {
    const auto& b = p.beta;
    const double z = b[1] * (q - b[2]);
    // 1/(1+e^z) evaluated without overflow.
    const double s = z > 0.0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
    return b[0] * (0.5 - s) + b[3] * q + b[4];
}

double logistic_sse(const LogisticParams& p, std::span<const double> q, std::span<const double> mos) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double r = logistic_eval(p, q[i]) - mos[i];
        s += r * r;
    }
    return s;
}

LogisticParams logistic_fit(std::span<const double> q, std::span<const double> mos, std::uint64_t seed) {
    if (q.size() != mos.size()) throw ContractError("logistic fit inputs differ in length");
    if (q.size() < 5) throw ContractError("logistic fit needs at least 5 pairs");
    const double n = static_cast<double>(q.size());
    const double mq = std::accumulate(q.begin(), q.end(), 0.0) / n;
    const double mm = std::accumulate(mos.begin(), mos.end(), 0.0) / n;
    double sqq = 0.0;
    double sqm = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        sqq += (q[i] - mq) * (q[i] - mq);
        sqm += (q[i] - mq) * (mos[i] - mm);
    }
    const double sd = std::sqrt(sqq / n);
    const auto [mn, mx] = std::minmax_element(mos.begin(), mos.end());

    auto objective = [&](const Eigen::VectorXd& x) {
        LogisticParams p;
        std::copy(x.data(), x.data() + 5, p.beta.begin());
        return logistic_sse(p, q, mos);
    };
    auto refine = [&](Eigen::VectorXd x) {
        // A second pass from the first optimum escapes premature simplex collapse.
        NelderMeadResult r = nelder_mead(objective, x);
        return nelder_mead(objective, r.x);
    };

    Eigen::VectorXd standard(5);
    standard << *mx - *mn, sd > 0.0 ? 1.0 / sd : 1.0, mq, 0.0, mm;
    std::vector<Eigen::VectorXd> starts = {standard};
    {
        const double slope = sqq > 0.0 ? sqm / sqq : 0.0;
        Eigen::VectorXd affine(5);
        affine << 0.0, standard(1), mq, slope, mm - slope * mq;
        starts.push_back(affine);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 0.3);
    for (int k = 0; k < 10; ++k) {
        Eigen::VectorXd s = standard;
        for (Eigen::Index i = 0; i < 5; ++i) {
            const double scale = standard(i) != 0.0 ? std::abs(standard(i)) : 0.1 * (standard(0) != 0.0 ? std::abs(standard(0)) : 1.0);
            s(i) += jitter(rng) * scale;
        }
        starts.push_back(s);
    }

    LogisticParams best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (const auto& s : starts) {
        const NelderMeadResult r = refine(s);
        if (r.value < best_sse) {
            best_sse = r.value;
            std::copy(r.x.data(), r.x.data() + 5, best.beta.begin());
        }
    }
    return best;
}

}  // namespace lfiqa
