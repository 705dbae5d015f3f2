#include "lfiqa/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "lfiqa/error.hpp"
#include "lfiqa/metrics.hpp"
#include "lfiqa/rng.hpp"

namespace lfiqa {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double SvrModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < support.rows(); ++i) {
        s += coef(i) * std::exp(-hyper.g * (support.row(i).transpose() - x).squaredNorm());
    }
    return s + bias;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd d(a.rows(), b.rows());
    for (Eigen::Index j = 0; j < b.rows(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) d(i, j) = (a.row(i) - b.row(j)).squaredNorm();
    return d;
}

namespace {

struct DualSolution {
    Eigen::VectorXd coef;  // alpha_i - alpha_i^* for every training row
    double bias = 0.0;
    long iterations = 0;
    bool converged = false;
};

// Dual variables and gradient, kept between solves with a growing C: the
// gradient does not depend on C and the old point stays feasible.
struct DualState {
    std::vector<double> alpha;
    std::vector<double> grad;
};

DualSolution solve_dual(const Eigen::VectorXd& y, const Eigen::MatrixXd& kernel, const SvrHyper& hyper,
                        const SvrSolverOptions& options, DualState* warm = nullptr) {
    const Eigen::Index l = y.size();
    if (kernel.rows() != l || kernel.cols() != l) throw ContractError("SVR input sizes disagree");
    if (!(hyper.c > 0.0) || !(hyper.g > 0.0) || !(hyper.epsilon >= 0.0)) throw ContractError("invalid SVR hyperparameters");
    const Eigen::Index n2 = 2 * l;
    const double c = hyper.c;
    DualState local;
    DualState& st = warm != nullptr ? *warm : local;
    if (st.alpha.size() != static_cast<std::size_t>(n2)) {
        st.alpha.assign(static_cast<std::size_t>(n2), 0.0);
        st.grad.resize(static_cast<std::size_t>(n2));
        for (Eigen::Index t = 0; t < l; ++t) {
            st.grad[static_cast<std::size_t>(t)] = hyper.epsilon - y(t);
            st.grad[static_cast<std::size_t>(t + l)] = hyper.epsilon + y(t);
        }
    }
    std::vector<double>& alpha = st.alpha;
    std::vector<double>& grad = st.grad;
    std::vector<signed char> sign(static_cast<std::size_t>(n2));
    for (Eigen::Index t = 0; t < l; ++t) {
        sign[static_cast<std::size_t>(t)] = 1;
        sign[static_cast<std::size_t>(t + l)] = -1;
    }
    auto q = [&](Eigen::Index a, Eigen::Index b) {
        return sign[static_cast<std::size_t>(a)] * sign[static_cast<std::size_t>(b)] * kernel(a % l, b % l);
    };
    auto qd = [&](Eigen::Index a) { return kernel(a % l, a % l); };
    auto at_upper = [&](Eigen::Index t) { return alpha[static_cast<std::size_t>(t)] >= c; };
    auto at_lower = [&](Eigen::Index t) { return alpha[static_cast<std::size_t>(t)] <= 0.0; };

    DualSolution m;
    long iter = 0;
    for (; iter < options.max_iter; ++iter) {
        double gmax = -kInf;
        Eigen::Index i = -1;
        for (Eigen::Index t = 0; t < n2; ++t) {
            const double g = grad[static_cast<std::size_t>(t)];
            if (sign[static_cast<std::size_t>(t)] > 0) {
                if (!at_upper(t) && -g >= gmax) { gmax = -g; i = t; }
            } else if (!at_lower(t) && g >= gmax) {
                gmax = g;
                i = t;
            }
        }
        double gmax2 = -kInf;
        double best_obj = kInf;
        Eigen::Index j = -1;
        if (i >= 0) {
            // For either sign of t the pair curvature is K_ii + K_tt - 2 K_it.
            const double* ki = kernel.col(i % l).data();
            const double kii = kernel(i % l, i % l);
            for (Eigen::Index t = 0; t < l; ++t) {
                if (alpha[static_cast<std::size_t>(t)] <= 0.0) continue;
                const double g = grad[static_cast<std::size_t>(t)];
                const double diff = gmax + g;
                gmax2 = std::max(gmax2, g);
                if (diff > 0) {
                    const double quad = kii + kernel(t, t) - 2.0 * ki[t];
                    const double obj = -(diff * diff) / (quad > 0 ? quad : kTau);
                    if (obj <= best_obj) { best_obj = obj; j = t; }
                }
            }
            for (Eigen::Index t = 0; t < l; ++t) {
                if (alpha[static_cast<std::size_t>(t + l)] >= c) continue;
                const double g = grad[static_cast<std::size_t>(t + l)];
                const double diff = gmax - g;
                gmax2 = std::max(gmax2, -g);
                if (diff > 0) {
                    const double quad = kii + kernel(t, t) - 2.0 * ki[t];
                    const double obj = -(diff * diff) / (quad > 0 ? quad : kTau);
                    if (obj <= best_obj) { best_obj = obj; j = t + l; }
                }
            }
        }
        if (i < 0 || j < 0 || gmax + gmax2 < options.tol) {
            m.converged = true;
            break;
        }

        auto& ai = alpha[static_cast<std::size_t>(i)];
        auto& aj = alpha[static_cast<std::size_t>(j)];
        const double old_i = ai;
        const double old_j = aj;
        const double qij = q(i, j);
        if (sign[static_cast<std::size_t>(i)] != sign[static_cast<std::size_t>(j)]) {
            double quad = qd(i) + qd(j) + 2.0 * qij;
            if (quad <= 0) quad = kTau;
            const double delta = (-grad[static_cast<std::size_t>(i)] - grad[static_cast<std::size_t>(j)]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0) {
                if (aj < 0) { aj = 0; ai = diff; }
            } else if (ai < 0) {
                ai = 0;
                aj = -diff;
            }
            if (diff > 0) {
                if (ai > c) { ai = c; aj = c - diff; }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            double quad = qd(i) + qd(j) - 2.0 * qij;
            if (quad <= 0) quad = kTau;
            const double delta = (grad[static_cast<std::size_t>(i)] - grad[static_cast<std::size_t>(j)]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) { ai = c; aj = sum - c; }
            } else if (aj < 0) {
                aj = 0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) { aj = c; ai = sum - c; }
            } else if (ai < 0) {
                ai = 0;
                aj = sum;
            }
        }
        // Q(a, t) = sign_a sign_t K(a, t); the two halves share one kernel column.
        const double wi = sign[static_cast<std::size_t>(i)] * (ai - old_i);
        const double wj = sign[static_cast<std::size_t>(j)] * (aj - old_j);
        const double* ki = kernel.col(i % l).data();
        const double* kj = kernel.col(j % l).data();
        double* gp = grad.data();
        double* gn = grad.data() + l;
        for (Eigen::Index t = 0; t < l; ++t) {
            const double v = ki[t] * wi + kj[t] * wj;
            gp[t] += v;
            gn[t] -= v;
        }
    }
    m.iterations = iter;

    double ub = kInf;
    double lb = -kInf;
    double sum_free = 0.0;
    int free_count = 0;
    for (Eigen::Index t = 0; t < n2; ++t) {
        const double yg = sign[static_cast<std::size_t>(t)] * grad[static_cast<std::size_t>(t)];
        const bool pos = sign[static_cast<std::size_t>(t)] > 0;
        if (at_upper(t)) {
            if (pos) lb = std::max(lb, yg); else ub = std::min(ub, yg);
        } else if (at_lower(t)) {
            if (pos) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++free_count;
            sum_free += yg;
        }
    }
    const double rho = free_count > 0 ? sum_free / free_count : 0.5 * (ub + lb);
    m.bias = -rho;
    m.coef.resize(l);
    for (Eigen::Index t = 0; t < l; ++t) {
        m.coef(t) = alpha[static_cast<std::size_t>(t)] - alpha[static_cast<std::size_t>(t + l)];
    }
    return m;
}

}  // namespace

SvrModel svr_fit_kernel(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::MatrixXd& kernel,
                        const SvrHyper& hyper, SvrSolverOptions options) {
    if (x.rows() != y.size()) throw ContractError("SVR input sizes disagree");
    const DualSolution d = solve_dual(y, kernel, hyper, options);
    SvrModel m;
    m.hyper = hyper;
    m.bias = d.bias;
    m.iterations = d.iterations;
    m.converged = d.converged;
    std::vector<Eigen::Index> sv;
    for (Eigen::Index t = 0; t < y.size(); ++t)
        if (d.coef(t) != 0.0) sv.push_back(t);
    m.support = x(sv, Eigen::all);
    m.coef = d.coef(sv);
    return m;
}

SvrModel svr_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const SvrHyper& hyper, SvrSolverOptions options) {
    const Eigen::MatrixXd k = (-hyper.g * squared_distances(x, x)).array().exp().matrix();
    return svr_fit_kernel(x, y, k, hyper, options);
}

SvrGrid SvrGrid::standard() {
    SvrGrid g;
    for (int e = -5; e <= 15; e += 2) g.c.push_back(std::ldexp(1.0, e));
    for (int e = -15; e <= 3; e += 2) g.g.push_back(std::ldexp(1.0, e));
    return g;
}

Eigen::VectorXd QualityModel::normalize(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != dim()) {
        throw ContractError("feature vector has " + std::to_string(x.size()) + " entries, model expects " +
                            std::to_string(dim()));
    }
    return ((x - feat_mean).array() / feat_std.array()).matrix();
}

std::vector<int> assign_folds(std::size_t rows, int folds, std::uint64_t seed, const std::vector<std::string>* groups) {
    if (folds < 2) throw ContractError("need at least 2 folds");
    std::mt19937_64 rng(seed);
    std::vector<int> fold(rows, 0);
    if (groups != nullptr) {
        if (groups->size() != rows) throw ContractError("group labels do not match rows");
        std::vector<std::string> unique(*groups);
        std::sort(unique.begin(), unique.end());
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        if (unique.size() >= 2) {
            deterministic_shuffle(unique, rng);
            const int k = std::min<int>(folds, static_cast<int>(unique.size()));
            std::map<std::string, int> of;
            for (std::size_t i = 0; i < unique.size(); ++i) of[unique[i]] = static_cast<int>(i) % k;
            for (std::size_t r = 0; r < rows; ++r) fold[r] = of.at((*groups)[r]);
            return fold;
        }
    }
    std::vector<std::size_t> idx(rows);
    std::iota(idx.begin(), idx.end(), 0);
    deterministic_shuffle(idx, rng);
    const int k = std::min<int>(folds, static_cast<int>(rows));
    for (std::size_t i = 0; i < rows; ++i) fold[idx[i]] = static_cast<int>(i) % k;
    return fold;
}

QualityModel svr_train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::string>* groups,
                       SvrTrainOptions options) {
    const Eigen::Index n = x.rows();
    if (n < 8) throw ContractError("SVR training needs at least 8 rows");
    if (y.size() != n) throw ContractError("label count does not match feature rows");
    if (!y.allFinite() || !x.allFinite()) throw ContractError("training data must be finite");
    if (y.maxCoeff() == y.minCoeff()) throw ContractError("degenerate labels: all training labels are equal");
    if (options.grid.c.empty() || options.grid.g.empty()) throw ContractError("empty hyperparameter grid");

    QualityModel model;
    model.feat_mean = x.colwise().mean().transpose();
    model.feat_std.resize(x.cols());
    model.constant_feature.assign(static_cast<std::size_t>(x.cols()), false);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double sd = std::sqrt((x.col(j).array() - model.feat_mean(j)).square().mean());
        if (sd > 0.0) {
            model.feat_std(j) = sd;
        } else {
            model.feat_std(j) = 1.0;
            model.constant_feature[static_cast<std::size_t>(j)] = true;
        }
    }
    Eigen::MatrixXd z(n, x.cols());
    for (Eigen::Index i = 0; i < n; ++i) z.row(i) = model.normalize(x.row(i).transpose()).transpose();

    const std::vector<int> fold = assign_folds(static_cast<std::size_t>(n), options.folds, options.seed, groups);
    const int k = *std::max_element(fold.begin(), fold.end()) + 1;
    std::vector<std::vector<Eigen::Index>> train_idx(static_cast<std::size_t>(k));
    std::vector<std::vector<Eigen::Index>> test_idx(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int f = 0; f < k; ++f) (fold[static_cast<std::size_t>(i)] == f ? test_idx : train_idx)[static_cast<std::size_t>(f)].push_back(i);
    }

    const Eigen::MatrixXd dist = squared_distances(z, z);
    const std::size_t nc = options.grid.c.size();
    SvrHyper best{options.grid.c.front(), options.grid.g.front(), options.grid.epsilon};
    double best_srcc = -kInf;
    std::vector<Eigen::VectorXd> oof(nc, Eigen::VectorXd(n));
    for (double g : options.grid.g) {
        const Eigen::MatrixXd kern = (-g * dist).array().exp().matrix();
        for (int f = 0; f < k; ++f) {
            const auto& tr = train_idx[static_cast<std::size_t>(f)];
            const auto& te = test_idx[static_cast<std::size_t>(f)];
            const Eigen::MatrixXd ktr = kern(tr, tr);
            const Eigen::MatrixXd kte = kern(te, tr);
            const Eigen::VectorXd ytr = y(tr);
            DualState state;
            for (std::size_t ci = 0; ci < nc; ++ci) {
                if (ci > 0 && options.grid.c[ci] < options.grid.c[ci - 1]) state = {};
                const SvrHyper h{options.grid.c[ci], g, options.grid.epsilon};
                const DualSolution d = solve_dual(ytr, ktr, h, options.solver, &state);
                const Eigen::VectorXd pred = kte * d.coef;
                for (std::size_t t = 0; t < te.size(); ++t) oof[ci](te[t]) = pred(static_cast<Eigen::Index>(t)) + d.bias;
            }
        }
        for (std::size_t ci = 0; ci < nc; ++ci) {
            const Eigen::VectorXd& o = oof[ci];
            double srcc = -kInf;
            if (o.maxCoeff() > o.minCoeff()) {
                srcc = spearman({o.data(), static_cast<std::size_t>(n)}, {y.data(), static_cast<std::size_t>(n)});
            }
            if (srcc > best_srcc) {
                best_srcc = srcc;
                best = {options.grid.c[ci], g, options.grid.epsilon};
            }
        }
    }
    model.cv_srcc = std::isfinite(best_srcc) ? best_srcc : 0.0;
    const Eigen::MatrixXd kern = (-best.g * dist).array().exp().matrix();
    model.svr = svr_fit_kernel(z, y, kern, best, options.solver);
    return model;
}

double svr_predict(const QualityModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    return model.svr.predict(model.normalize(x));
}

Eigen::VectorXd svr_predict_batch(const QualityModel& model, const Eigen::MatrixXd& x) {
    Eigen::VectorXd out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) out(i) = svr_predict(model, x.row(i).transpose());
    return out;
}

}  // namespace lfiqa
