#include "lfiqa/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "lfiqa/colorspace.hpp"
#include "lfiqa/error.hpp"
#include "lfiqa/mscn.hpp"
#include "lfiqa/parallel.hpp"
#include "lfiqa/rng.hpp"

namespace lfiqa {

namespace {

void check_severity(int severity) {
    if (severity < 1 || severity > 5) throw ContractError("severity must be in 1..5");
}

double to8(double v) { return static_cast<double>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)) / 255.0; }

void quantize8(Plane& p) { p = p.unaryExpr([](double v) { return to8(v); }); }

struct Wave {
    double fx, fy, phase, amp;
};

std::vector<Wave> make_waves(std::mt19937_64& rng, const SynthSpec& spec) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto n = static_cast<std::size_t>(spec.components);
    // Frequencies and orientations are stratified (one draw per equal-width
    // bin, orientation bins shuffled) so every scene shares one spectral envelope.
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < n; ++i) slot[i] = i;
    std::shuffle(slot.begin(), slot.end(), rng);
    std::vector<Wave> w(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double nd = static_cast<double>(n);
        const double angle = (static_cast<double>(slot[i]) + unit(rng)) / nd * std::numbers::pi;
        const double f = spec.f_min + (static_cast<double>(i) + unit(rng)) / nd * (spec.f_max - spec.f_min);
        w[i] = {f * std::cos(angle), f * std::sin(angle), unit(rng) * 2.0 * std::numbers::pi, 1.0 / f};
        norm += w[i].amp * w[i].amp;
    }
    // Unit variance: each sinusoid contributes amp^2 / 2.
    const double scale = std::sqrt(2.0 / norm);
    for (auto& x : w) x.amp *= scale;
    return w;
}

Plane render(const std::vector<Wave>& waves, SpatialSize size, double dx, double dy) {
    Plane p = Plane::Zero(size.x, size.y);
    for (const auto& w : waves) {
        for (Eigen::Index y = 0; y < size.y; ++y)
            for (Eigen::Index x = 0; x < size.x; ++x)
                p(x, y) += w.amp * std::sin(2.0 * std::numbers::pi * (w.fx * (x + dx) + w.fy * (y + dy)) + w.phase);
    }
    return p;
}

Plane gaussian_blur(const Plane& in, double sigma) {
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    Eigen::VectorXd g(2 * half + 1);
    for (int k = -half; k <= half; ++k) g(k + half) = std::exp(-(k * k) / (2.0 * sigma * sigma));
    g /= g.sum();
    const auto rows = in.rows();
    const auto cols = in.cols();
    Plane tmp(rows, cols);
    Plane out(rows, cols);
    for (Eigen::Index y = 0; y < cols; ++y)
        for (Eigen::Index x = 0; x < rows; ++x) {
            double s = 0.0;
            for (int k = -half; k <= half; ++k) s += g(k + half) * in(reflect_index(x + k, rows), y);
            tmp(x, y) = s;
        }
    for (Eigen::Index y = 0; y < cols; ++y)
        for (Eigen::Index x = 0; x < rows; ++x) {
            double s = 0.0;
            for (int k = -half; k <= half; ++k) s += g(k + half) * tmp(x, reflect_index(y + k, cols));
            out(x, y) = s;
        }
    return out;
}

RgbImage map_planes(const RgbImage& v, const std::function<Plane(const Plane&)>& f) {
    RgbImage out{f(v.r), f(v.g), f(v.b)};
    quantize8(out.r);
    quantize8(out.g);
    quantize8(out.b);
    return out;
}

RgbImage average(const RgbImage& a, const RgbImage& b) {
    RgbImage out{0.5 * (a.r + b.r), 0.5 * (a.g + b.g), 0.5 * (a.b + b.b)};
    quantize8(out.r);
    quantize8(out.g);
    quantize8(out.b);
    return out;
}

RgbImage rotate_hue(const RgbImage& v, double degrees) {
    const double c = std::cos(degrees * std::numbers::pi / 180.0);
    const double s = std::sin(degrees * std::numbers::pi / 180.0);
    RgbImage out = v;
    for (Eigen::Index y = 0; y < v.cols(); ++y)
        for (Eigen::Index x = 0; x < v.rows(); ++x) {
            const auto lab = srgb_to_cielab(v.r(x, y), v.g(x, y), v.b(x, y));
            const auto rgb = cielab_to_srgb(lab[0], c * lab[1] - s * lab[2], s * lab[1] + c * lab[2]);
            out.r(x, y) = to8(rgb[0]);
            out.g(x, y) = to8(rgb[1]);
            out.b(x, y) = to8(rgb[2]);
        }
    return out;
}

}  // namespace

std::string_view distortion_name(DistortionKind k) {
    switch (k) {
        case DistortionKind::blur: return "blur";
        case DistortionKind::quantize: return "quantize";
        case DistortionKind::nn_view: return "nn_view";
        case DistortionKind::linear_view: return "linear_view";
        case DistortionKind::chroma_shift: return "chroma_shift";
    }
    return "?";
}

DistortionKind parse_distortion(std::string_view name) {
    for (auto k : kDistortionKinds)
        if (distortion_name(k) == name) return k;
    throw ContractError("unknown distortion '" + std::string(name) + "'");
}

double blur_sigma(int severity) {
    check_severity(severity);
    return 0.5 * severity;
}

int quantize_levels(int severity) {
    check_severity(severity);
    static constexpr std::array<int, 5> levels = {64, 32, 16, 8, 4};
    return levels[static_cast<std::size_t>(severity - 1)];
}

int view_period(int severity) {
    check_severity(severity);
    static constexpr std::array<int, 5> k = {8, 6, 4, 3, 2};
    return k[static_cast<std::size_t>(severity - 1)];
}

double chroma_angle_deg(int severity) {
    check_severity(severity);
    return 8.0 * severity;
}

bool is_replaced_view(int t, int severity) { return t % view_period(severity) == 0; }

LightField generate(const SynthSpec& spec) {
    if (spec.angular.s < 1 || spec.angular.t < 1 || spec.spatial.x < 1 || spec.spatial.y < 1) {
        throw ContractError("synthetic light field sizes must be positive");
    }
    if (!(std::abs(spec.disparity) * std::max(spec.angular.s, spec.angular.t) <
          std::min(spec.spatial.x, spec.spatial.y) / 4.0)) {
        throw ContractError("disparity too large: content would leave the frame");
    }
    if (spec.texture != "multisine") throw ContractError("unknown texture recipe '" + spec.texture + "'");
    if (spec.components < 1 || !(spec.f_min > 0.0) || !(spec.f_max >= spec.f_min)) {
        throw ContractError("invalid texture parameters");
    }
    std::mt19937_64 rng(derive_seed(spec.seed, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto luma = make_waves(rng, spec);
    const auto chroma1 = make_waves(rng, spec);
    const auto chroma2 = make_waves(rng, spec);
    const std::array<double, 3> base = {0.4 + 0.2 * unit(rng), 0.4 + 0.2 * unit(rng), 0.4 + 0.2 * unit(rng)};

    const double cs = (spec.angular.s + 1) / 2.0;
    const double ct = (spec.angular.t + 1) / 2.0;
    std::vector<RgbImage> views;
    for (int s = 1; s <= spec.angular.s; ++s) {
        for (int t = 1; t <= spec.angular.t; ++t) {
            const double dx = spec.disparity * (s - cs);
            const double dy = spec.disparity * (t - ct);
            const Plane l = render(luma, spec.spatial, dx, dy);
            const Plane c1 = render(chroma1, spec.spatial, dx, dy);
            const Plane c2 = render(chroma2, spec.spatial, dx, dy);
            RgbImage v{(base[0] + 0.16 * l.array() + 0.07 * c1.array()).matrix(),
                       (base[1] + 0.16 * l.array() - 0.035 * c1.array() + 0.05 * c2.array()).matrix(),
                       (base[2] + 0.16 * l.array() - 0.07 * c2.array()).matrix()};
            if (spec.noise > 0.0) {
                std::mt19937_64 nrng(derive_seed(spec.seed, 1 + static_cast<std::uint64_t>((s - 1) * spec.angular.t + t)));
                std::normal_distribution<double> n(0.0, spec.noise);
                for (Plane* p : {&v.r, &v.g, &v.b}) *p = p->unaryExpr([&](double x) { return x + n(nrng); });
            }
            quantize8(v.r);
            quantize8(v.g);
            quantize8(v.b);
            views.push_back(std::move(v));
        }
    }
    return LightField(spec.angular, std::move(views));
}

LightField distort(const LightField& lf, const DistortionSpec& spec) {
    check_severity(spec.severity);
    const auto [S, T] = lf.angular_size();
    std::vector<RgbImage> out;
    out.reserve(lf.views().size());
    switch (spec.kind) {
        case DistortionKind::blur: {
            const double sigma = blur_sigma(spec.severity);
            for (const auto& v : lf.views()) out.push_back(map_planes(v, [&](const Plane& p) { return gaussian_blur(p, sigma); }));
            break;
        }
        case DistortionKind::quantize: {
            const double top = quantize_levels(spec.severity) - 1;
            for (const auto& v : lf.views()) {
                out.push_back(map_planes(v, [&](const Plane& p) {
                    return Plane(p.unaryExpr([&](double x) { return std::round(x * top) / top; }));
                }));
            }
            break;
        }
        case DistortionKind::nn_view:
        case DistortionKind::linear_view: {
            for (int s = 1; s <= S; ++s) {
                for (int t = 1; t <= T; ++t) {
                    if (t == 1 || !is_replaced_view(t, spec.severity)) {
                        out.push_back(lf.view(s, t));
                    } else if (spec.kind == DistortionKind::nn_view || t == T) {
                        out.push_back(lf.view(s, t - 1));
                    } else {
                        out.push_back(average(lf.view(s, t - 1), lf.view(s, t + 1)));
                    }
                }
            }
            break;
        }
        case DistortionKind::chroma_shift: {
            const double angle = chroma_angle_deg(spec.severity);
            for (int s = 1; s <= S; ++s)
                for (int t = 1; t <= T; ++t)
                    out.push_back((s + t) % 2 == 1 ? rotate_hue(lf.view(s, t), angle) : lf.view(s, t));
            break;
        }
    }
    return LightField(lf.angular_size(), std::move(out));
}

DatasetManifest write_synth_dataset(const std::filesystem::path& dir, const SynthDatasetOptions& options) {
    if (options.scenes < 1) throw ContractError("need at least one scene");
    struct Item {
        std::string id;
        std::string scene;
        int scene_index;
        std::optional<DistortionSpec> distortion;
        double label;
    };
    std::vector<Item> items;
    for (int sc = 1; sc <= options.scenes; ++sc) {
        char scene[16];
        std::snprintf(scene, sizeof scene, "scene%02d", sc);
        if (options.include_pristine) items.push_back({std::string(scene) + "_pristine", scene, sc, std::nullopt, 6.0});
        for (auto k : options.kinds)
            for (int sev : options.severities) {
                check_severity(sev);
                items.push_back({std::string(scene) + "_" + std::string(distortion_name(k)) + "_" + std::to_string(sev),
                                 scene, sc, DistortionSpec{k, sev}, 6.0 - sev});
            }
    }
    std::filesystem::create_directories(dir);
    std::vector<std::optional<LightField>> pristine(static_cast<std::size_t>(options.scenes));
    parallel_for(pristine.size(), options.threads, [&](std::size_t i) {
        SynthSpec spec = options.base;
        spec.seed = derive_seed(options.base.seed, i + 1);
        pristine[i] = generate(spec);
    });
    parallel_for(items.size(), options.threads, [&](std::size_t i) {
        const Item& it = items[i];
        const LightField& base = *pristine[static_cast<std::size_t>(it.scene_index - 1)];
        save_lightfield(it.distortion ? distort(base, *it.distortion) : base, dir / it.id);
    });
    DatasetManifest m;
    for (const auto& it : items) m.entries.push_back({it.id, std::filesystem::absolute(dir / it.id), it.label, it.scene});
    save_manifest(m, dir / "manifest.json");
    return m;
}

}  // namespace lfiqa
