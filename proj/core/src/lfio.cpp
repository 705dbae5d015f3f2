#include "lfiqa/lfio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>

#include <json.hpp>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace fs = std::filesystem;
using nlohmann::json;

LightField::LightField(AngularSize angular, std::vector<RgbImage> views)
    : angular_(angular), views_(std::move(views)) {
    if (angular_.s <= 0 || angular_.t <= 0) {
        throw ContractError("angular size must be positive");
    }
    if (views_.size() != static_cast<std::size_t>(angular_.s) * static_cast<std::size_t>(angular_.t)) {
        throw ContractError("light field needs exactly S*T views");
    }
    spatial_ = {static_cast<int>(views_.front().rows()), static_cast<int>(views_.front().cols())};
    if (spatial_.x <= 0 || spatial_.y <= 0) {
        throw ContractError("views must be non-empty");
    }
    for (auto& v : views_) {
        for (Plane* p : {&v.r, &v.g, &v.b}) {
            if (p->rows() != spatial_.x || p->cols() != spatial_.y) {
                throw ContractError("views of a light field must share one spatial size");
            }
            *p = p->cwiseMax(0.0).cwiseMin(1.0);
        }
    }
}

const RgbImage& LightField::view(int s, int t) const {
    if (s < 1 || s > angular_.s || t < 1 || t > angular_.t) {
        throw ContractError("view index (" + std::to_string(s) + "," + std::to_string(t) + ") out of range");
    }
    return views_[static_cast<std::size_t>((s - 1) * angular_.t + (t - 1))];
}

std::string view_file_name(int s, int t) {
    return "v_" + std::to_string(s) + "_" + std::to_string(t) + ".png";
}

DatasetManifest load_manifest(const fs::path& path, bool check_paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("manifest " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw FormatError("manifest root must be an object");
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != 1) {
        throw FormatError("manifest version must be 1");
    }
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        throw FormatError("manifest needs an 'entries' array");
    }

    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    DatasetManifest manifest;
    std::set<std::string> seen;
    std::size_t index = 0;
    for (const auto& e : doc["entries"]) {
        const std::string where = "manifest entry #" + std::to_string(index++);
        if (!e.is_object()) throw FormatError(where + " is not an object");
        if (!e.contains("id") || !e["id"].is_string() || e["id"].get<std::string>().empty()) {
            throw FormatError(where + " has no string 'id'");
        }
        ManifestEntry entry;
        entry.id = e["id"].get<std::string>();
        const std::string who = "manifest entry '" + entry.id + "'";
        if (!seen.insert(entry.id).second) throw FormatError("duplicate id '" + entry.id + "' in manifest");
        if (!e.contains("path") || !e["path"].is_string()) throw FormatError(who + " has no string 'path'");
        if (!e.contains("scene") || !e["scene"].is_string() || e["scene"].get<std::string>().empty()) {
            throw FormatError(who + " needs a non-empty 'scene'");
        }
        entry.scene = e["scene"].get<std::string>();
        if (e.contains("label") && !e["label"].is_null()) {
            if (!e["label"].is_number()) throw FormatError(who + " has a non-numeric 'label'");
            entry.label = e["label"].get<double>();
        }
        fs::path p = e["path"].get<std::string>();
        entry.path = p.is_absolute() ? p : (base / p).lexically_normal();
        if (check_paths && !fs::is_directory(entry.path)) {
            throw IoError(who + ": directory " + entry.path.string() + " does not exist");
        }
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    json entries = json::array();
    for (const auto& e : manifest.entries) {
        json j;
        j["id"] = e.id;
        fs::path rel = e.path.is_absolute() ? e.path.lexically_relative(fs::absolute(base)) : e.path.lexically_relative(base);
        j["path"] = (rel.empty() ? e.path : rel).generic_string();
        j["label"] = e.label ? json(*e.label) : json(nullptr);
        j["scene"] = e.scene;
        entries.push_back(std::move(j));
    }
    json doc{{"version", manifest.version}, {"entries", std::move(entries)}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest " + path.string());
    out << doc.dump(2) << '\n';
}

LightField load_lightfield(const ManifestEntry& entry, std::optional<AngularSize> expected_grid) {
    try {
        return load_lightfield(entry.path, expected_grid);
    } catch (const IoError& e) {
        throw IoError("entry '" + entry.id + "': " + e.what());
    }
}

LightField load_lightfield(const fs::path& directory, std::optional<AngularSize> expected_grid) {
    if (!fs::is_directory(directory)) {
        throw IoError("light field directory " + directory.string() + " does not exist");
    }
    static const std::regex pattern(R"(v_([0-9]+)_([0-9]+)\.[A-Za-z0-9]+)");
    // Ordered map keyed by (s, t) makes the result independent of listing order.
    std::map<std::pair<int, int>, fs::path> files;
    for (const auto& item : fs::directory_iterator(directory)) {
        if (!item.is_regular_file()) continue;
        const std::string name = item.path().filename().string();
        std::smatch m;
        if (!std::regex_match(name, m, pattern)) continue;
        const int s = std::stoi(m[1].str());
        const int t = std::stoi(m[2].str());
        if (s < 1 || t < 1) throw IoError("view indices are 1-based: " + name);
        if (!files.emplace(std::pair{s, t}, item.path()).second) {
            throw IoError("more than one file for view (" + std::to_string(s) + "," + std::to_string(t) + ")");
        }
    }
    if (files.empty()) throw IoError("no v_<s>_<t> views in " + directory.string());

    AngularSize grid;
    if (expected_grid) {
        grid = *expected_grid;
    } else {
        for (const auto& [key, _] : files) {
            grid.s = std::max(grid.s, key.first);
            grid.t = std::max(grid.t, key.second);
        }
    }
    for (const auto& [key, _] : files) {
        if (key.first > grid.s || key.second > grid.t) {
            throw IoError("view (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                          ") lies outside the expected " + std::to_string(grid.s) + "x" +
                          std::to_string(grid.t) + " grid");
        }
    }

    std::vector<RgbImage> views;
    views.reserve(static_cast<std::size_t>(grid.s * grid.t));
    for (int s = 1; s <= grid.s; ++s) {
        for (int t = 1; t <= grid.t; ++t) {
            auto it = files.find({s, t});
            if (it == files.end()) {
                throw IoError("missing view (" + std::to_string(s) + "," + std::to_string(t) + ") in " +
                              directory.string());
            }
            RgbImage img = read_png(it->second);
            if (!views.empty() && (img.rows() != views.front().rows() || img.cols() != views.front().cols())) {
                throw IoError("view (" + std::to_string(s) + "," + std::to_string(t) + ") is " +
                              std::to_string(img.rows()) + "x" + std::to_string(img.cols()) + " but view (1,1) is " +
                              std::to_string(views.front().rows()) + "x" + std::to_string(views.front().cols()));
            }
            views.push_back(std::move(img));
        }
    }
    return LightField(grid, std::move(views));
}

void save_lightfield(const LightField& lf, const fs::path& directory) {
    fs::create_directories(directory);
    const auto [S, T] = lf.angular_size();
    for (int s = 1; s <= S; ++s) {
        for (int t = 1; t <= T; ++t) {
            write_png(lf.view(s, t), directory / view_file_name(s, t), 8);
        }
    }
}

}  // namespace lfiqa
