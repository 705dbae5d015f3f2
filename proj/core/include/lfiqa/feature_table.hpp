#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfiqa/features.hpp"

namespace lfiqa {

/// Pooled features of a dataset: CSV `id,scene,label,f001..` plus a JSON
/// sidecar describing every feature column.
struct FeatureTable {
    std::vector<std::string> ids;
    std::vector<std::string> scenes;
    std::vector<std::optional<double>> labels;
    Eigen::MatrixXd x;  // one row per item
    std::vector<FeatureColumn> columns;

    [[nodiscard]] std::size_t rows() const { return ids.size(); }
    [[nodiscard]] bool all_labelled() const;
    [[nodiscard]] Eigen::VectorXd label_vector() const;  // throws if any label is missing
};

/// Unpooled per-orientation vectors, one row per (item, orientation).
struct OrientationRow {
    std::string id;
    std::string scene;
    std::optional<double> label;
    Orientation orientation = Orientation::deg0;
    bool present = false;
    Eigen::VectorXd f;
};

[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& csv);
[[nodiscard]] std::filesystem::path orientation_path(const std::filesystem::path& csv);

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] double parse_double(const std::string& s);

void write_feature_table(const FeatureTable& table, const std::filesystem::path& csv);
[[nodiscard]] FeatureTable read_feature_table(const std::filesystem::path& csv);

void write_orientation_table(const std::vector<OrientationRow>& rows, const std::filesystem::path& csv);
[[nodiscard]] std::vector<OrientationRow> read_orientation_table(const std::filesystem::path& csv);

/// Pools orientation rows (grouped by id, in first-appearance order) into a feature table.
[[nodiscard]] FeatureTable repool(const std::vector<OrientationRow>& rows, const std::array<double, 4>& weights);

/// Keeps the columns whose channel is in `channels` ("L", "a", "b") and whose
/// group is in `groups` ("pcsc", "tavi"). Joint "Lab" columns stay only when
/// all three channels are selected.
[[nodiscard]] FeatureTable select_columns(const FeatureTable& table, const std::set<std::string>& channels,
                                          const std::set<std::string>& groups);

struct Prediction {
    std::string id;
    double score = 0.0;
};
void write_predictions(const std::vector<Prediction>& preds, const std::filesystem::path& csv);

}  // namespace lfiqa
