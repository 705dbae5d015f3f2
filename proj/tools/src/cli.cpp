#include "lfiqa_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "lfiqa/colorspace.hpp"
#include "lfiqa/error.hpp"
#include "lfiqa/feature_table.hpp"
#include "lfiqa/features.hpp"
#include "lfiqa/lfio.hpp"
#include "lfiqa/logistic.hpp"
#include "lfiqa/model_io.hpp"
#include "lfiqa/parallel.hpp"
#include "lfiqa/svr.hpp"
#include "lfiqa/synth.hpp"
#include "lfiqa/tavi.hpp"
#include "lfiqa/tucker.hpp"
#include "lfiqa/viewstack.hpp"

namespace lfiqa::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_file(const fs::path& p, const char* flag) {
    if (p.empty()) throw UsageError(std::string(flag) + " is required");
    if (!fs::is_regular_file(p)) throw UsageError(std::string(flag) + ": no such file " + p.string());
}

void require_out(const fs::path& p) {
    if (p.empty()) throw UsageError("--out is required");
    const fs::path parent = p.parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw UsageError("--out: directory " + parent.string() + " does not exist");
    }
}

void check_selection(const RunConfig& cfg) {
    for (const auto& c : cfg.channels)
        if (c != "L" && c != "a" && c != "b") throw UsageError("--channels accepts L, a, b; got '" + c + "'");
    for (const auto& g : cfg.groups)
        if (g != "pcsc" && g != "tavi") throw UsageError("--features accepts pcsc, tavi; got '" + g + "'");
    if (cfg.channels.empty() || cfg.groups.empty()) throw UsageError("empty feature selection");
}

// Feature table after optional re-pooling and column selection.
FeatureTable load_table(const RunConfig& cfg) {
    require_file(cfg.input, "--input");
    check_selection(cfg);
    FeatureTable table;
    if (cfg.weights_given) {
        const fs::path orient = orientation_path(cfg.input);
        if (!fs::is_regular_file(orient)) {
            throw UsageError("--weights needs the orientation table " + orient.string());
        }
        table = repool(read_orientation_table(orient), cfg.weights);
    } else {
        table = read_feature_table(cfg.input);
    }
    const bool all = cfg.channels.size() == 3 && cfg.groups.size() == 2;
    return all ? table : select_columns(table, cfg.channels, cfg.groups);
}

std::vector<std::string> column_names(const FeatureTable& t) {
    std::vector<std::string> names;
    names.reserve(t.columns.size());
    for (const auto& c : t.columns) names.push_back(c.name);
    return names;
}

Eigen::VectorXd labels_of(const FeatureTable& t) {
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (!t.labels[i]) throw FormatError("missing label for entry '" + t.ids[i] + "'");
    }
    return t.label_vector();
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

std::string split_name(SplitMode m) { return m == SplitMode::by_scene ? "scene" : "item"; }

}  // namespace

void configure_logging() {
    auto logger = spdlog::get("lfiqa");
    if (!logger) {
        logger = std::make_shared<spdlog::logger>("lfiqa", std::make_shared<spdlog::sinks::stderr_sink_mt>());
        spdlog::set_default_logger(logger);
    }
    spdlog::set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::info;
    if (const char* env = std::getenv("LFIQA_LOG"); env != nullptr && *env != '\0') {
        std::string name(env);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        level = spdlog::level::from_str(name);
        // from_str maps unknown names to off; treat those as the default instead
        if (level == spdlog::level::off && name != "off") level = spdlog::level::info;
    }
    spdlog::set_level(level);
}

std::array<double, 4> parse_weights(std::string_view text) {
    std::array<double, 4> w{};
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        if (n == 4) throw UsageError("--weights takes exactly four values");
        try {
            w[n++] = parse_double(std::string(text.substr(pos, comma - pos)));
        } catch (const Error&) {
            throw UsageError("--weights: '" + std::string(text.substr(pos, comma - pos)) + "' is not a number");
        }
        pos = comma + 1;
    }
    if (n != 4) throw UsageError("--weights takes exactly four values");
    double sum = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("--weights must be finite and nonnegative");
        sum += v;
    }
    if (!(sum > 0.0)) throw UsageError("--weights must not all be zero");
    return w;
}

int cmd_synth(const RunConfig& cfg) {
    if (cfg.out.empty()) throw UsageError("--out is required");
    if (cfg.scenes < 1) throw UsageError("--scenes must be positive");
    SynthDatasetOptions opt;
    opt.scenes = cfg.scenes;
    opt.kinds.clear();
    for (const auto& k : cfg.kinds) {
        try {
            opt.kinds.push_back(parse_distortion(k));
        } catch (const ContractError& e) {
            throw UsageError(e.what());
        }
    }
    for (int s : cfg.severities)
        if (s < 1 || s > 5) throw UsageError("--severities must lie in 1..5");
    opt.severities = cfg.severities;
    opt.include_pristine = cfg.pristine;
    opt.threads = cfg.threads;
    opt.base.seed = cfg.seed;
    opt.base.angular = {cfg.angular, cfg.angular};
    opt.base.spatial = {cfg.spatial, cfg.spatial};
    opt.base.disparity = cfg.disparity;
    if (!(std::abs(cfg.disparity) * cfg.angular < cfg.spatial / 4.0)) {
        throw UsageError("--disparity too large for the requested sizes");
    }
    const auto m = write_synth_dataset(cfg.out, opt);
    spdlog::info("wrote {} light fields and {}", m.entries.size(), (cfg.out / "manifest.json").string());
    return kOk;
}

int cmd_extract(const RunConfig& cfg) {
    require_file(cfg.manifest, "--manifest");
    require_out(cfg.out);
    if (cfg.min_stack_len < 1) throw UsageError("--min-stack-len must be at least 1");
    const DatasetManifest manifest = load_manifest(cfg.manifest, false);
    const std::size_t n = manifest.entries.size();
    spdlog::info("extracting {} entries with {} thread(s)", n, cfg.threads);

    std::vector<std::optional<OrientationFeatures>> orient(n);
    std::vector<std::optional<PooledFeatures>> pooled(n);
    std::vector<std::string> errors(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const LightField lf = load_lightfield(e);
            OrientationFeatures of = extract_features(lf, {cfg.min_stack_len});
            pooled[i] = pool(of, cfg.weights);
            orient[i] = std::move(of);
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            spdlog::info("[{}/{}] {} done in {:.0f} ms", i + 1, n, e.id, ms);
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
            spdlog::error("entry '{}' failed: {}", e.id, ex.what());
        }
    });

    FeatureTable table;
    table.columns = feature_columns();
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < n; ++i)
        if (pooled[i]) ok.push_back(i);
    table.x.resize(static_cast<Eigen::Index>(ok.size()), kFeatureDim);
    std::vector<OrientationRow> rows;
    for (std::size_t r = 0; r < ok.size(); ++r) {
        const std::size_t i = ok[r];
        const auto& e = manifest.entries[i];
        table.ids.push_back(e.id);
        table.scenes.push_back(e.scene);
        table.labels.push_back(e.label);
        table.x.row(static_cast<Eigen::Index>(r)) = pooled[i]->f_final.transpose();
        for (std::size_t d = 0; d < 4; ++d) {
            rows.push_back({e.id, e.scene, e.label, kOrientations[d], orient[i]->present[d], orient[i]->f[d]});
        }
    }
    write_feature_table(table, cfg.out);
    write_orientation_table(rows, orientation_path(cfg.out));
    const std::size_t failed = n - ok.size();
    spdlog::info("wrote {} rows to {} ({} failed)", ok.size(), cfg.out.string(), failed);
    return failed == 0 ? kOk : kPartialFailure;
}

int cmd_train(const RunConfig& cfg) {
    require_out(cfg.out);
    const FeatureTable table = load_table(cfg);
    const Eigen::VectorXd y = labels_of(table);
    SvrTrainOptions opt;
    opt.seed = cfg.seed;
    const bool grouped = cfg.split == SplitMode::by_scene;
    QualityModel model = svr_train(table.x, y, grouped ? &table.scenes : nullptr, opt);
    model.feature_names = column_names(table);
    const Eigen::VectorXd pred = svr_predict_batch(model, table.x);
    if (pred.size() >= 5 && pred.maxCoeff() > pred.minCoeff()) {
        model.logistic = logistic_fit({pred.data(), static_cast<std::size_t>(pred.size())},
                                      {y.data(), static_cast<std::size_t>(y.size())}, cfg.seed);
    }
    save_model(model, cfg.out);
    spdlog::info("trained on {} rows: C={} g={} inner-CV SRCC {:.4f}, {} support vectors", table.rows(),
                 model.svr.hyper.c, model.svr.hyper.g, model.cv_srcc, model.svr.support.rows());
    return kOk;
}

namespace {

Eigen::VectorXd predict_scores(const QualityModel& model, const FeatureTable& table, const fs::path& input,
                               bool mapped) {
    if (table.x.cols() != model.dim()) {
        throw FormatError("feature count mismatch: the model expects " + std::to_string(model.dim()) +
                          " features but " + input.string() + " has " + std::to_string(table.x.cols()));
    }
    const auto names = column_names(table);
    if (!model.feature_names.empty() && names != model.feature_names) {
        throw FormatError("feature columns of " + input.string() + " do not match the model's columns");
    }
    Eigen::VectorXd s = svr_predict_batch(model, table.x);
    if (mapped && model.logistic) s = s.unaryExpr([&](double q) { return logistic_eval(*model.logistic, q); });
    return s;
}

}  // namespace

int cmd_predict(const RunConfig& cfg) {
    require_file(cfg.model, "--model");
    require_out(cfg.out);
    const FeatureTable table = load_table(cfg);
    const QualityModel model = load_model(cfg.model);
    const Eigen::VectorXd s = predict_scores(model, table, cfg.input, cfg.mapped);
    std::vector<Prediction> preds;
    for (std::size_t i = 0; i < table.rows(); ++i) preds.push_back({table.ids[i], s(static_cast<Eigen::Index>(i))});
    write_predictions(preds, cfg.out);
    spdlog::info("wrote {} predictions to {}", preds.size(), cfg.out.string());
    return kOk;
}

int cmd_eval(const RunConfig& cfg) {
    require_out(cfg.out);
    if (cfg.iterations < 1) throw UsageError("--iterations must be positive");
    const FeatureTable table = load_table(cfg);
    Dataset data{table.x, labels_of(table), table.scenes};
    CrossValOptions opt;
    opt.iterations = cfg.iterations;
    opt.split = cfg.split;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    spdlog::info("evaluating {} rows, {} iterations, split by {}", table.rows(), cfg.iterations, split_name(cfg.split));
    const EvalSummary summary = cross_validate(data, opt);

    json doc;
    doc["srcc"] = summary.srcc;
    doc["lcc"] = summary.lcc;
    doc["rmse"] = summary.rmse;
    doc["or"] = summary.or_ratio;
    doc["iterations"] = cfg.iterations;
    doc["split"] = split_name(cfg.split);
    doc["seed"] = cfg.seed;
    doc["items"] = table.rows();
    doc["features"] = table.x.cols();
    doc["resampled"] = summary.resampled;
    open_out(cfg.out) << doc.dump(2) << '\n';

    fs::path log = cfg.out;
    log.replace_extension(".iterations.csv");
    auto out = open_out(log);
    out << "iteration,srcc,lcc,rmse,or,n_train,n_test,c,g,logistic,resamples\n";
    for (const auto& r : summary.iterations) {
        out << r.iteration << ',' << format_double(r.srcc) << ',' << format_double(r.lcc) << ','
            << format_double(r.rmse) << ',' << format_double(r.or_ratio) << ',' << r.n_train << ',' << r.n_test << ','
            << format_double(r.c) << ',' << format_double(r.g) << ',' << (r.logistic ? 1 : 0) << ',' << r.resamples
            << '\n';
    }
    spdlog::info("median SRCC {:.4f} LCC {:.4f} RMSE {:.4f} OR {:.4f}", summary.srcc, summary.lcc, summary.rmse,
                 summary.or_ratio);
    return kOk;
}

int cmd_report(const RunConfig& cfg) {
    require_out(cfg.out);
    if (cfg.report == "scatter") {
        require_file(cfg.model, "--model");
        const FeatureTable table = load_table(cfg);
        const QualityModel model = load_model(cfg.model);
        const Eigen::VectorXd q = predict_scores(model, table, cfg.input, false);
        auto out = open_out(cfg.out);
        out << "id,label,score,mapped\n";
        for (std::size_t i = 0; i < table.rows(); ++i) {
            const double s = q(static_cast<Eigen::Index>(i));
            const double m = model.logistic ? logistic_eval(*model.logistic, s) : s;
            out << table.ids[i] << ',' << (table.labels[i] ? format_double(*table.labels[i]) : "") << ','
                << format_double(s) << ',' << format_double(m) << '\n';
        }
        return kOk;
    }
    if (cfg.report != "energies" && cfg.report != "sscurve") {
        throw UsageError("--kind must be scatter, energies or sscurve");
    }
    if (cfg.lightfield.empty() || !fs::is_directory(cfg.lightfield)) {
        throw UsageError("--lightfield must name a light field directory");
    }
    const LightField lf = load_lightfield(cfg.lightfield);
    const auto lab = lab_channels(lf);
    auto out = open_out(cfg.out);
    if (cfg.report == "energies") {
        out << "orientation,stack,length,component,energy_fraction\n";
    } else {
        out << "orientation,stack,view,position,ssim\n";
    }
    for (Orientation d : kOrientations) {
        const auto stacks = filter_usable(build_stacks(lab[0], d, 1), cfg.min_stack_len);
        for (std::size_t k = 0; k < stacks.size(); ++k) {
            const auto& st = stacks[k];
            if (cfg.report == "energies") {
                const ComponentStack comps = angular_components(st);
                for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(st.length()); ++r) {
                    out << orientation_name(d) << ',' << k << ',' << st.length() << ',' << r << ','
                        << format_double(comps.energy_fraction(r)) << '\n';
                }
            } else {
                const SsCurve c = ss_curve(st, principal_image(st), kLabDynamicRange[0]);
                for (std::size_t v = 0; v < c.values.size(); ++v) {
                    out << orientation_name(d) << ',' << k << ',' << v << ',' << format_double(c.positions[v]) << ','
                        << format_double(c.values[v]) << '\n';
                }
            }
        }
    }
    return kOk;
}

int run(int argc, const char* const* argv) {
    configure_logging();
    RunConfig cfg;
    CLI::App app{"lfiqa: no-reference light field image quality assessment"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string weights;
    std::string split = "scene";
    std::vector<std::string> channels;
    std::vector<std::string> groups;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out,-o", cfg.out, "Output path")->required();
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "Random seed (default 42)");
    };
    auto add_table = [&](CLI::App* sub) {
        sub->add_option("--input,-i", cfg.input, "Feature CSV written by extract")->required();
        sub->add_option("--weights", weights, "Orientation weights w1,w2,w3,w4 for 0,45,90,135 degrees");
        sub->add_option("--channels", channels, "Channel subset of L,a,b")->delimiter(',');
        sub->add_option("--features", groups, "Feature groups pcsc,tavi")->delimiter(',');
        sub->add_option("--split", split, "Fold grouping: scene or item")->check(CLI::IsMember({"scene", "item"}));
    };

    auto* synth = app.add_subcommand("synth", "Write a synthetic distorted dataset with a manifest");
    add_common(synth);
    synth->add_option("--scenes", cfg.scenes, "Number of pristine scenes");
    synth->add_option("--angular", cfg.angular, "Views per angular axis");
    synth->add_option("--spatial", cfg.spatial, "Pixels per spatial axis");
    synth->add_option("--disparity", cfg.disparity, "Pixel shift per view step");
    synth->add_option("--kinds", cfg.kinds, "Distortion kinds")->delimiter(',');
    synth->add_option("--severities", cfg.severities, "Severities in 1..5")->delimiter(',');
    synth->add_flag("--pristine", cfg.pristine, "Also write the undistorted scenes");

    auto* extract = app.add_subcommand("extract", "Compute features for every manifest entry");
    add_common(extract);
    extract->add_option("--manifest,-m", cfg.manifest, "Dataset manifest")->required();
    extract->add_option("--weights", weights, "Orientation weights w1,w2,w3,w4 for 0,45,90,135 degrees");
    extract->add_option("--min-stack-len", cfg.min_stack_len, "Shortest view stack that is used");

    auto* train = app.add_subcommand("train", "Fit the quality model on a labelled feature table");
    add_common(train);
    add_table(train);

    auto* predict = app.add_subcommand("predict", "Score a feature table with a trained model");
    add_common(predict);
    add_table(predict);
    predict->add_option("--model", cfg.model, "Model JSON written by train")->required();
    predict->add_flag("--mapped", cfg.mapped, "Apply the model's logistic score mapping");

    auto* eval = app.add_subcommand("eval", "Repeated train/test evaluation with median metrics");
    add_common(eval);
    add_table(eval);
    eval->add_option("--iterations", cfg.iterations, "Train/test iterations (default 1000)");

    auto* report = app.add_subcommand("report", "Write plotting data");
    add_common(report);
    report->add_option("--kind", cfg.report, "scatter, energies or sscurve")
        ->check(CLI::IsMember({"scatter", "energies", "sscurve"}));
    report->add_option("--input,-i", cfg.input, "Feature CSV (scatter)");
    report->add_option("--model", cfg.model, "Model JSON (scatter)");
    report->add_option("--lightfield", cfg.lightfield, "Light field directory (energies, sscurve)");
    report->add_option("--min-stack-len", cfg.min_stack_len, "Shortest view stack that is used");
    report->add_option("--weights", weights, "Orientation weights w1,w2,w3,w4 for 0,45,90,135 degrees");
    report->add_option("--channels", channels, "Channel subset of L,a,b")->delimiter(',');
    report->add_option("--features", groups, "Feature groups pcsc,tavi")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (!weights.empty()) {
            cfg.weights = parse_weights(weights);
            cfg.weights_given = true;
        }
        if (!channels.empty()) cfg.channels = {channels.begin(), channels.end()};
        if (!groups.empty()) cfg.groups = {groups.begin(), groups.end()};
        cfg.split = split == "item" ? SplitMode::by_item : SplitMode::by_scene;
        cfg.subcommand = app.get_subcommands().front()->get_name();

        if (cfg.subcommand == "synth") return cmd_synth(cfg);
        if (cfg.subcommand == "extract") return cmd_extract(cfg);
        if (cfg.subcommand == "train") return cmd_train(cfg);
        if (cfg.subcommand == "predict") return cmd_predict(cfg);
        if (cfg.subcommand == "eval") return cmd_eval(cfg);
        return cmd_report(cfg);
    } catch (const UsageError& e) {
        spdlog::error("{}", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kPartialFailure;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("lfiqa");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lfiqa::cli
