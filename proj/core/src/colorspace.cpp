#include "lfiqa/colorspace.hpp"

#include <algorithm>
#include <cmath>

#include "lfiqa/error.hpp"

namespace lfiqa {

namespace {

constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;
constexpr double kDelta = 6.0 / 29.0;

double linearize(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta3 = kDelta * kDelta * kDelta;
    return t > delta3 ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double f) {
    return f > kDelta ? f * f * f : 3.0 * kDelta * kDelta * (f - 4.0 / 29.0);
}

double delinearize(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

}  // namespace

const Plane& LabImage::channel(int n) const {
    switch (n) {
        case 1: return L;
        case 2: return a;
        case 3: return b;
        default: throw ContractError("Lab channel index must be 1, 2 or 3");
    }
}

std::array<double, 3> srgb_to_cielab(double r, double g, double b) {
    constexpr double slack = 1e-12;
    if (!(r >= -slack && r <= 1 + slack && g >= -slack && g <= 1 + slack && b >= -slack && b <= 1 + slack)) {
        throw ContractError("sRGB input outside [0,1]");
    }
    const double rl = linearize(r);
    const double gl = linearize(g);
    const double bl = linearize(b);
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> cielab_to_srgb(double L, double a, double b) {
    const double fy = (L + 16.0) / 116.0;
    const double fx = fy + a / 500.0;
    const double fz = fy - b / 200.0;
    const double x = kWhiteX * lab_f_inv(fx);
    const double y = kWhiteY * lab_f_inv(fy);
    const double z = kWhiteZ * lab_f_inv(fz);
    const double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    auto out = [](double c) { return std::clamp(delinearize(std::clamp(c, 0.0, 1.0)), 0.0, 1.0); };
    return {out(rl), out(gl), out(bl)};
}

LabImage srgb_to_cielab(const RgbImage& image) {
    const auto rows = image.rows();
    const auto cols = image.cols();
    if (image.g.rows() != rows || image.g.cols() != cols || image.b.rows() != rows || image.b.cols() != cols) {
        throw ContractError("RGB planes differ in size");
    }
    LabImage out{Plane(rows, cols), Plane(rows, cols), Plane(rows, cols)};
    for (Eigen::Index y = 0; y < cols; ++y) {
        for (Eigen::Index x = 0; x < rows; ++x) {
            const auto lab = srgb_to_cielab(image.r(x, y), image.g(x, y), image.b(x, y));
            out.L(x, y) = lab[0];
            out.a(x, y) = lab[1];
            out.b(x, y) = lab[2];
        }
    }
    return out;
}

std::array<LabChannelGrid, 3> lab_channels(const LightField& lf) {
    std::array<LabChannelGrid, 3> grids;
    for (auto& g : grids) {
        g.angular = lf.angular_size();
        g.views.reserve(lf.views().size());
    }
    for (const auto& v : lf.views()) {
        LabImage lab = srgb_to_cielab(v);
        grids[0].views.push_back(std::move(lab.L));
        grids[1].views.push_back(std::move(lab.a));
        grids[2].views.push_back(std::move(lab.b));
    }
    return grids;
}

}  // namespace lfiqa
