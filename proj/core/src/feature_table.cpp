#include "lfiqa/feature_table.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lfiqa/error.hpp"
#include "lfiqa/pooling.hpp"

namespace lfiqa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void check_cell(const std::string& s, const char* what) {
    if (s.find_first_of(",\"\n\r") != std::string::npos) {
        throw FormatError(std::string(what) + " '" + s + "' contains a CSV delimiter");
    }
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw FormatError(p.string() + " is empty");
    return lines;
}

std::optional<double> parse_label(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

}  // namespace

bool FeatureTable::all_labelled() const {
    return std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); });
}

Eigen::VectorXd FeatureTable::label_vector() const {
    Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!labels[i]) throw FormatError("item '" + ids[i] + "' has no label");
        y(static_cast<Eigen::Index>(i)) = *labels[i];
    }
    return y;
}

fs::path sidecar_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".columns.json");
    return p;
}

fs::path orientation_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".orient.csv");
    return p;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw FormatError("not a number: '" + s + "'");
    return v;
}

void write_feature_table(const FeatureTable& t, const fs::path& csv) {
    if (static_cast<std::size_t>(t.x.rows()) != t.rows() || t.scenes.size() != t.rows() || t.labels.size() != t.rows() ||
        static_cast<std::size_t>(t.x.cols()) != t.columns.size()) {
        throw ContractError("feature table parts disagree in size");
    }
    auto out = open_out(csv);
    out << "id,scene,label";
    for (const auto& c : t.columns) out << ',' << c.name;
    out << '\n';
    for (std::size_t i = 0; i < t.rows(); ++i) {
        check_cell(t.ids[i], "id");
        check_cell(t.scenes[i], "scene");
        out << t.ids[i] << ',' << t.scenes[i] << ',' << (t.labels[i] ? format_double(*t.labels[i]) : "");
        for (Eigen::Index j = 0; j < t.x.cols(); ++j) out << ',' << format_double(t.x(static_cast<Eigen::Index>(i), j));
        out << '\n';
    }
    json cols = json::array();
    for (const auto& c : t.columns) {
        cols.push_back({{"name", c.name}, {"channel", c.channel}, {"group", c.group}, {"feature", c.feature}});
    }
    auto side = open_out(sidecar_path(csv));
    side << json{{"version", 1}, {"columns", cols}}.dump(2) << '\n';
}

FeatureTable read_feature_table(const fs::path& csv) {
    const auto lines = read_lines(csv);
    const auto header = split_line(lines[0]);
    if (header.size() < 4 || header[0] != "id" || header[1] != "scene" || header[2] != "label") {
        throw FormatError(csv.string() + ": header must start with id,scene,label and name at least one feature");
    }
    FeatureTable t;
    const std::size_t nf = header.size() - 3;
    std::map<std::string, FeatureColumn> meta;
    const fs::path side = sidecar_path(csv);
    if (fs::exists(side)) {
        std::ifstream in(side);
        try {
            const json j = json::parse(in);
            for (const auto& c : j.at("columns")) {
                FeatureColumn fc{c.at("name"), c.at("channel"), c.at("group"), c.at("feature")};
                meta[fc.name] = fc;
            }
        } catch (const json::exception& e) {
            throw FormatError("malformed sidecar " + side.string() + ": " + e.what());
        }
    }
    for (std::size_t j = 0; j < nf; ++j) {
        const std::string& name = header[j + 3];
        auto it = meta.find(name);
        t.columns.push_back(it != meta.end() ? it->second : FeatureColumn{name, "", "", ""});
    }
    t.x.resize(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(nf));
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_line(lines[r]);
        if (cells.size() != header.size()) {
            throw FormatError(csv.string() + ": line " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) +
                              " cells, expected " + std::to_string(header.size()));
        }
        t.ids.push_back(cells[0]);
        t.scenes.push_back(cells[1]);
        t.labels.push_back(parse_label(cells[2]));
        for (std::size_t j = 0; j < nf; ++j) {
            t.x(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(j)) = parse_double(cells[j + 3]);
        }
    }
    return t;
}

void write_orientation_table(const std::vector<OrientationRow>& rows, const fs::path& csv) {
    auto out = open_out(csv);
    out << "id,scene,label,orientation,present";
    for (const auto& c : feature_columns()) out << ',' << c.name;
    out << '\n';
    for (const auto& r : rows) {
        check_cell(r.id, "id");
        check_cell(r.scene, "scene");
        if (r.f.size() != kFeatureDim) throw ContractError("orientation vector must have 59 entries");
        out << r.id << ',' << r.scene << ',' << (r.label ? format_double(*r.label) : "") << ','
            << orientation_name(r.orientation) << ',' << (r.present ? 1 : 0);
        for (Eigen::Index j = 0; j < r.f.size(); ++j) out << ',' << format_double(r.f(j));
        out << '\n';
    }
}

std::vector<OrientationRow> read_orientation_table(const fs::path& csv) {
    const auto lines = read_lines(csv);
    const auto header = split_line(lines[0]);
    if (header.size() != 5 + kFeatureDim || header[3] != "orientation" || header[4] != "present") {
        throw FormatError(csv.string() + ": not an orientation feature table");
    }
    std::vector<OrientationRow> rows;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_line(lines[r]);
        if (cells.size() != header.size()) throw FormatError(csv.string() + ": ragged line " + std::to_string(r + 1));
        OrientationRow row;
        row.id = cells[0];
        row.scene = cells[1];
        row.label = parse_label(cells[2]);
        bool found = false;
        for (Orientation d : kOrientations) {
            if (cells[3] == orientation_name(d)) {
                row.orientation = d;
                found = true;
            }
        }
        if (!found) throw FormatError("unknown orientation '" + cells[3] + "'");
        row.present = cells[4] == "1";
        row.f.resize(kFeatureDim);
        for (int j = 0; j < kFeatureDim; ++j) row.f(j) = parse_double(cells[static_cast<std::size_t>(j) + 5]);
        rows.push_back(std::move(row));
    }
    return rows;
}

FeatureTable repool(const std::vector<OrientationRow>& rows, const std::array<double, 4>& weights) {
    std::vector<std::string> order;
    std::map<std::string, std::pair<OrientationFeatures, const OrientationRow*>> by_id;
    for (const auto& r : rows) {
        auto [it, inserted] = by_id.try_emplace(r.id);
        if (inserted) {
            order.push_back(r.id);
            it->second.second = &r;
            for (auto& v : it->second.first.f) v = Eigen::VectorXd::Zero(kFeatureDim);
        }
        const auto k = static_cast<std::size_t>(orientation_index(r.orientation));
        it->second.first.f[k] = r.f;
        it->second.first.present[k] = r.present;
    }
    FeatureTable t;
    t.columns = feature_columns();
    t.x.resize(static_cast<Eigen::Index>(order.size()), kFeatureDim);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& [of, first] = by_id.at(order[i]);
        t.ids.push_back(first->id);
        t.scenes.push_back(first->scene);
        t.labels.push_back(first->label);
        t.x.row(static_cast<Eigen::Index>(i)) = pool(of, weights).f_final.transpose();
    }
    return t;
}

FeatureTable select_columns(const FeatureTable& table, const std::set<std::string>& channels,
                            const std::set<std::string>& groups) {
    const bool all_channels = channels.count("L") && channels.count("a") && channels.count("b");
    std::vector<Eigen::Index> keep;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        const auto& c = table.columns[j];
        if (c.channel.empty() || c.group.empty()) {
            throw FormatError("column " + c.name + " has no sidecar metadata; cannot select by channel or group");
        }
        const bool channel_ok = c.channel == "Lab" ? all_channels : channels.count(c.channel) > 0;
        if (channel_ok && groups.count(c.group)) keep.push_back(static_cast<Eigen::Index>(j));
    }
    if (keep.empty()) throw ContractError("feature selection leaves no columns");
    FeatureTable out = table;
    out.x = table.x(Eigen::all, keep);
    out.columns.clear();
    for (auto j : keep) out.columns.push_back(table.columns[static_cast<std::size_t>(j)]);
    return out;
}

void write_predictions(const std::vector<Prediction>& preds, const fs::path& csv) {
    auto out = open_out(csv);
    out << "id,score\n";
    for (const auto& p : preds) out << p.id << ',' << format_double(p.score) << '\n';
}

}  // namespace lfiqa
