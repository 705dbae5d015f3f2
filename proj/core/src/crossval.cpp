#include "lfiqa/crossval.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lfiqa/error.hpp"
#include "lfiqa/logistic.hpp"
#include "lfiqa/metrics.hpp"
#include "lfiqa/parallel.hpp"
#include "lfiqa/rng.hpp"

namespace lfiqa {

namespace {

constexpr std::size_t kMinTest = 2;
constexpr std::size_t kMinLogistic = 5;

}  // namespace

double median(std::vector<double> v) {
    if (v.empty()) throw ContractError("median of an empty sequence");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_rows(const Dataset& data, SplitMode mode,
                                                                           double train_frac, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(data.y.size());
    std::mt19937_64 rng(seed);
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> test;
    if (mode == SplitMode::by_scene) {
        std::vector<std::string> scenes(data.scenes);
        std::sort(scenes.begin(), scenes.end());
        scenes.erase(std::unique(scenes.begin(), scenes.end()), scenes.end());
        deterministic_shuffle(scenes, rng);
        auto n_train = static_cast<std::size_t>(std::lround(train_frac * static_cast<double>(scenes.size())));
        n_train = std::clamp<std::size_t>(n_train, 1, scenes.size() - 1);
        std::vector<std::string> train_scenes(scenes.begin(), scenes.begin() + static_cast<long>(n_train));
        std::sort(train_scenes.begin(), train_scenes.end());
        for (std::size_t i = 0; i < n; ++i) {
            (std::binary_search(train_scenes.begin(), train_scenes.end(), data.scenes[i]) ? train : test)
                .push_back(static_cast<Eigen::Index>(i));
        }
    } else {
        std::vector<Eigen::Index> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<Eigen::Index>(i);
        deterministic_shuffle(idx, rng);
        auto n_train = static_cast<std::size_t>(std::lround(train_frac * static_cast<double>(n)));
        n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
        train.assign(idx.begin(), idx.begin() + static_cast<long>(n_train));
        test.assign(idx.begin() + static_cast<long>(n_train), idx.end());
        std::sort(train.begin(), train.end());
        std::sort(test.begin(), test.end());
    }
    return {train, test};
}

EvalSummary cross_validate(const Dataset& data, const CrossValOptions& options) {
    const auto n = static_cast<std::size_t>(data.y.size());
    if (static_cast<std::size_t>(data.x.rows()) != n || data.scenes.size() != n) {
        throw ContractError("dataset parts disagree in size");
    }
    if (options.iterations < 1) throw ContractError("iterations must be positive");
    if (!(options.train_frac > 0.0 && options.train_frac < 1.0)) throw ContractError("train fraction must lie in (0,1)");
    if (options.split == SplitMode::by_scene) {
        std::vector<std::string> s(data.scenes);
        std::sort(s.begin(), s.end());
        if (std::unique(s.begin(), s.end()) - s.begin() < 2) throw ContractError("by-scene split needs at least 2 scenes");
    } else if (n < 10) {
        throw ContractError("by-item split needs at least 10 items");
    }

    EvalSummary summary;
    summary.iterations.resize(static_cast<std::size_t>(options.iterations));
    parallel_for(static_cast<std::size_t>(options.iterations), options.threads, [&](std::size_t it) {
        IterationRecord rec;
        rec.iteration = static_cast<int>(it);
        std::vector<Eigen::Index> train;
        std::vector<Eigen::Index> test;
        for (int attempt = 0;; ++attempt) {
            const std::uint64_t s = derive_seed(options.seed, it * 1024 + static_cast<std::uint64_t>(attempt));
            std::tie(train, test) = split_rows(data, options.split, options.train_frac, s);
            const Eigen::VectorXd yt = data.y(test);
            const bool usable = test.size() >= kMinTest && train.size() >= 8 && yt.maxCoeff() > yt.minCoeff() &&
                                data.y(train).maxCoeff() > data.y(train).minCoeff();
            if (usable) break;
            if (attempt + 1 >= options.max_resamples) {
                throw NumericError("could not draw a usable train/test split in iteration " + std::to_string(it));
            }
            ++rec.resamples;
        }
        SvrTrainOptions so = options.svr;
        so.seed = derive_seed(options.seed ^ 0x5f5f5f5fULL, it);
        std::vector<std::string> groups;
        for (auto i : train) groups.push_back(data.scenes[static_cast<std::size_t>(i)]);
        const Eigen::MatrixXd xtr = data.x(train, Eigen::all);
        const Eigen::VectorXd ytr = data.y(train);
        const QualityModel model =
            svr_train(xtr, ytr, options.split == SplitMode::by_scene ? &groups : nullptr, so);
        const Eigen::MatrixXd xte = data.x(test, Eigen::all);
        const Eigen::VectorXd yte = data.y(test);
        const Eigen::VectorXd pred = svr_predict_batch(model, xte);
        const std::span<const double> p(pred.data(), static_cast<std::size_t>(pred.size()));
        const std::span<const double> m(yte.data(), static_cast<std::size_t>(yte.size()));

        Metrics met;
        if (pred.maxCoeff() == pred.minCoeff()) {
            // Constant predictions carry no ranking information.
            met.srcc = 0.0;
            met.lcc = 0.0;
            met.rmse = rmse(p, m);
            met.or_ratio = outlier_ratio(p, m);
        } else {
            std::optional<LogisticParams> lp;
            if (test.size() >= kMinLogistic) lp = logistic_fit(p, m);
            try {
                met = compute_metrics(p, m, lp);
                rec.logistic = lp.has_value();
            } catch (const ContractError&) {
                met = compute_metrics(p, m, std::nullopt);
            }
        }
        rec.srcc = met.srcc;
        rec.lcc = met.lcc;
        rec.rmse = met.rmse;
        rec.or_ratio = met.or_ratio;
        rec.n_train = static_cast<int>(train.size());
        rec.n_test = static_cast<int>(test.size());
        rec.c = model.svr.hyper.c;
        rec.g = model.svr.hyper.g;
        summary.iterations[it] = rec;
    });

    std::vector<double> srcc, lcc, rm, orr;
    for (const auto& r : summary.iterations) {
        srcc.push_back(r.srcc);
        lcc.push_back(r.lcc);
        rm.push_back(r.rmse);
        orr.push_back(r.or_ratio);
        summary.resampled += r.resamples;
    }
    summary.srcc = median(srcc);
    summary.lcc = median(lcc);
    summary.rmse = median(rm);
    summary.or_ratio = median(orr);
    return summary;
}

}  // namespace lfiqa
