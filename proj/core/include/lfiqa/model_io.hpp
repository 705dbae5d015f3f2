#pragma once

#include <filesystem>
#include <string>

#include "lfiqa/svr.hpp"

namespace lfiqa {

/// JSON document with a "version" field; doubles round-trip exactly.
[[nodiscard]] std::string model_to_json(const QualityModel& model);
[[nodiscard]] QualityModel model_from_json(const std::string& text);

void save_model(const QualityModel& model, const std::filesystem::path& path);
[[nodiscard]] QualityModel load_model(const std::filesystem::path& path);

}  // namespace lfiqa
