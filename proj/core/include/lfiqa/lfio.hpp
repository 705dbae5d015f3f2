#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfiqa/image.hpp"

namespace lfiqa {

/// Angular grid extent (S rows of views, T columns of views).
struct AngularSize {
    int s = 0;
    int t = 0;
    friend bool operator==(const AngularSize&, const AngularSize&) = default;
};

/// Spatial extent of every view (X rows, Y columns).
struct SpatialSize {
    int x = 0;
    int y = 0;
    friend bool operator==(const SpatialSize&, const SpatialSize&) = default;
};

/// A 4D light field L(s, t, x, y) of RGB samples in [0, 1].
///
/// Angular indices are 1-based in the public API, matching the on-disk
/// `v_<s>_<t>` naming. The object is immutable once built and can be
/// shared across threads.
class LightField {
public:
    LightField() = default;

    /// Takes ownership of S*T views in row-major angular order
    /// ((1,1), (1,2), ..., (1,T), (2,1), ...). Samples are clamped to [0,1].
    LightField(AngularSize angular, std::vector<RgbImage> views);

    [[nodiscard]] AngularSize angular_size() const { return angular_; }
    [[nodiscard]] SpatialSize spatial_size() const { return spatial_; }

    /// View at 1-based angular coordinate (s, t).
    [[nodiscard]] const RgbImage& view(int s, int t) const;

    [[nodiscard]] const std::vector<RgbImage>& views() const { return views_; }

private:
    AngularSize angular_;
    SpatialSize spatial_;
    std::vector<RgbImage> views_;
};

struct ManifestEntry {
    std::string id;
    std::filesystem::path path;  // absolute or relative to the current directory after loading
    std::optional<double> label;
    std::string scene;
};

struct DatasetManifest {
    int version = 1;
    std::vector<ManifestEntry> entries;
};

/// Parses and validates a manifest document:
/// {"version":1,"entries":[{"id":..,"path":..,"label":..,"scene":..}]}.
/// Relative paths resolve against the manifest's directory. Throws
/// FormatError (schema, duplicate id) or IoError (missing directory, only
/// with check_paths), naming the offending entry.
[[nodiscard]] DatasetManifest load_manifest(const std::filesystem::path& path, bool check_paths = true);

/// Writes a manifest; entry paths are written relative to the manifest's
/// directory when possible.
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Loads the `v_<s>_<t>.png` views of one entry. When expected_grid is
/// absent the grid is inferred from the largest indices present.
[[nodiscard]] LightField load_lightfield(const ManifestEntry& entry,
                                         std::optional<AngularSize> expected_grid = std::nullopt);
[[nodiscard]] LightField load_lightfield(const std::filesystem::path& directory,
                                         std::optional<AngularSize> expected_grid = std::nullopt);

/// Writes every view as an 8-bit RGB PNG using the canonical naming.
void save_lightfield(const LightField& lf, const std::filesystem::path& directory);

/// Canonical file name of a view, e.g. "v_3_7.png".
[[nodiscard]] std::string view_file_name(int s, int t);

// PNG helpers (8- and 16-bit RGB/RGBA/gray input; output 8- or 16-bit RGB).
[[nodiscard]] RgbImage read_png(const std::filesystem::path& file);
void write_png(const RgbImage& image, const std::filesystem::path& file, int bit_depth = 8);

}  // namespace lfiqa
