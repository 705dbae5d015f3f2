#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <array>
#include <vector>

#include "lfiqa/lfio.hpp"

namespace lfiqa {

struct SynthSpec {
    std::uint64_t seed = 1;
    AngularSize angular{9, 9};
    SpatialSize spatial{64, 64};
    double disparity = 0.3;  // pixels of shift per view step
    std::string texture = "multisine";  // only recipe: sum of oriented sinusoids with a 1/f amplitude spectrum
    int components = 60;
    double f_min = 0.02;  // cycles per pixel
    double f_max = 0.4;
    double noise = 0.0;  // std of additive per-view Gaussian noise, 0 disables
};

enum class DistortionKind { blur, quantize, nn_view, linear_view, chroma_shift };

struct DistortionSpec {
    DistortionKind kind = DistortionKind::blur;
    int severity = 1;  // 1..5
};

inline constexpr std::array<DistortionKind, 5> kDistortionKinds = {
    DistortionKind::blur, DistortionKind::quantize, DistortionKind::nn_view, DistortionKind::linear_view,
    DistortionKind::chroma_shift};

[[nodiscard]] std::string_view distortion_name(DistortionKind k);
[[nodiscard]] DistortionKind parse_distortion(std::string_view name);

/// Severity parameter tables.
[[nodiscard]] double blur_sigma(int severity);        // 0.5 .. 2.5
[[nodiscard]] int quantize_levels(int severity);      // 64 .. 4
[[nodiscard]] int view_period(int severity);          // k = 8, 6, 4, 3, 2
[[nodiscard]] double chroma_angle_deg(int severity);  // hue rotation of alternate views

/// Deterministic procedural light field. Each view is the same continuous
/// texture translated by disparity * (offset of the view from the grid
/// centre); samples are quantised to 8 bits so PNG storage is lossless.
[[nodiscard]] LightField generate(const SynthSpec& spec);

/// Applies one graded distortion; the result is 8-bit quantised as well.
///   blur         Gaussian, sigma 0.5..2.5, reflected borders
///   quantize     uniform levels 64..4
///   nn_view      in every row, view t with t % k == 0 is replaced by view t-1
///   linear_view  same views replaced by the mean of views t-1 and t+1 (t-1 at the edge)
///   chroma_shift views with odd s+t get their a*b* plane rotated
[[nodiscard]] LightField distort(const LightField& lf, const DistortionSpec& spec);

/// Views (s, t) replaced by the view-level distortions at this severity.
[[nodiscard]] bool is_replaced_view(int t, int severity);

struct SynthDatasetOptions {
    int scenes = 12;
    std::vector<DistortionKind> kinds{kDistortionKinds.begin(), kDistortionKinds.end()};
    std::vector<int> severities{1, 2, 3, 4, 5};
    bool include_pristine = false;
    SynthSpec base;  // seed is replaced by a per-scene seed
    unsigned threads = 1;
};

/// Writes every light field under `dir/<id>/` and `dir/manifest.json`, with
/// label 6 - severity (pristine 6) and one scene per seed.
DatasetManifest write_synth_dataset(const std::filesystem::path& dir, const SynthDatasetOptions& options);

}  // namespace lfiqa
