#include "lfiqa/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lfiqa/error.hpp"

namespace lfiqa {

using nlohmann::json;

namespace {

json vec_to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vec_from_json(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string model_to_json(const QualityModel& m) {
    json j;
    j["version"] = m.version;
    j["feature_names"] = m.feature_names;
    j["feat_mean"] = vec_to_json(m.feat_mean);
    j["feat_std"] = vec_to_json(m.feat_std);
    j["constant_feature"] = m.constant_feature;
    j["cv_srcc"] = m.cv_srcc;
    json svr;
    svr["C"] = m.svr.hyper.c;
    svr["g"] = m.svr.hyper.g;
    svr["epsilon"] = m.svr.hyper.epsilon;
    svr["bias"] = m.svr.bias;
    svr["iterations"] = m.svr.iterations;
    svr["converged"] = m.svr.converged;
    svr["coef"] = vec_to_json(m.svr.coef);
    json sv = json::array();
    for (Eigen::Index i = 0; i < m.svr.support.rows(); ++i) sv.push_back(vec_to_json(m.svr.support.row(i).transpose()));
    svr["support"] = std::move(sv);
    j["svr"] = std::move(svr);
    j["logistic"] = m.logistic ? json(m.logistic->beta) : json(nullptr);
    return j.dump(1);
}

QualityModel model_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        if (j.at("version").get<int>() != 1) throw FormatError("unsupported model version");
        QualityModel m;
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.feat_mean = vec_from_json(j.at("feat_mean"));
        m.feat_std = vec_from_json(j.at("feat_std"));
        m.constant_feature = j.at("constant_feature").get<std::vector<bool>>();
        m.cv_srcc = j.at("cv_srcc").get<double>();
        const json& s = j.at("svr");
        m.svr.hyper = {s.at("C").get<double>(), s.at("g").get<double>(), s.at("epsilon").get<double>()};
        m.svr.bias = s.at("bias").get<double>();
        m.svr.iterations = s.at("iterations").get<long>();
        m.svr.converged = s.at("converged").get<bool>();
        m.svr.coef = vec_from_json(s.at("coef"));
        const auto& sv = s.at("support");
        m.svr.support.resize(static_cast<Eigen::Index>(sv.size()), m.feat_mean.size());
        for (std::size_t i = 0; i < sv.size(); ++i) {
            const Eigen::VectorXd row = vec_from_json(sv[i]);
            if (row.size() != m.feat_mean.size()) throw FormatError("support vector length mismatch");
            m.svr.support.row(static_cast<Eigen::Index>(i)) = row.transpose();
        }
        if (m.feat_std.size() != m.feat_mean.size() || m.svr.coef.size() != m.svr.support.rows() ||
            m.constant_feature.size() != static_cast<std::size_t>(m.feat_mean.size())) {
            throw FormatError("model arrays have inconsistent sizes");
        }
        if (!j.at("logistic").is_null()) {
            LogisticParams p;
            p.beta = j.at("logistic").get<std::array<double, 5>>();
            m.logistic = p;
        }
        return m;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model document: ") + e.what());
    }
}

void save_model(const QualityModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model " + path.string());
    out << model_to_json(model) << '\n';
}

QualityModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace lfiqa
