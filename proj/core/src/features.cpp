#include "lfiqa/features.hpp"

#include "lfiqa/colorspace.hpp"
#include "lfiqa/error.hpp"
#include "lfiqa/pcsc.hpp"
#include "lfiqa/tavi.hpp"
#include "lfiqa/tucker.hpp"

namespace lfiqa {

namespace {

std::vector<FeatureColumn> make_columns() {
    static const std::array<const char*, 3> channels = {"L", "a", "b"};
    static const std::array<const char*, 11> pcsc_names = {
        "aggd_alpha",      "aggd_sigma_l",    "aggd_sigma_r",    "aggd_eta",
        "dct_whole",       "dct_band_low",    "dct_band_mid",    "dct_band_high",
        "dct_orient_1",    "dct_orient_2",    "dct_orient_3"};
    static const std::array<const char*, 5> mggd_names = {"mggd_phi", "mggd_gamma", "mggd_m12", "mggd_m13",
                                                          "mggd_m23"};
    static const std::array<const char*, 7> tavi_names = {"ss_f1",       "ss_f2",     "ss_f3",  "cooc_contrast",
                                                          "cooc_asm",    "cooc_entropy", "cooc_idm"};
    std::vector<FeatureColumn> cols;
    for (const char* ch : channels)
        for (const char* f : pcsc_names) cols.push_back({"", ch, "pcsc", f});
    for (const char* f : mggd_names) cols.push_back({"", "Lab", "pcsc", f});
    for (const char* ch : channels)
        for (const char* f : tavi_names) cols.push_back({"", ch, "tavi", f});
    for (std::size_t i = 0; i < cols.size(); ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "f%03zu", i + 1);
        cols[i].name = buf;
    }
    return cols;
}

}  // namespace

const std::vector<FeatureColumn>& feature_columns() {
    static const std::vector<FeatureColumn> cols = make_columns();
    return cols;
}

Eigen::VectorXd stack_features(const std::array<const ViewStack*, 3>& stacks) {
    std::array<Plane, 3> pcs;
    for (std::size_t n = 0; n < 3; ++n) {
        if (stacks[n] == nullptr) throw ContractError("missing channel stack");
        pcs[n] = principal_image(*stacks[n]);
    }
    const std::vector<double> p = pcsc_features(pcs);
    const std::vector<double> t = tavi_features(stacks, pcs);
    Eigen::VectorXd out(kFeatureDim);
    std::copy(p.begin(), p.end(), out.data());
    std::copy(t.begin(), t.end(), out.data() + p.size());
    return out;
}

OrientationFeatures extract_features(const LightField& lf, ExtractOptions options) {
    const auto lab = lab_channels(lf);
    OrientationFeatures of;
    for (Orientation d : kOrientations) {
        const auto k = static_cast<std::size_t>(orientation_index(d));
        std::array<std::vector<ViewStack>, 3> stacks;
        for (std::size_t n = 0; n < 3; ++n) {
            stacks[n] = filter_usable(build_stacks(lab[n], d, static_cast<int>(n) + 1), options.min_stack_len);
        }
        of.f[k] = Eigen::VectorXd::Zero(kFeatureDim);
        of.stack_count[k] = static_cast<int>(stacks[0].size());
        of.present[k] = !stacks[0].empty();
        for (std::size_t i = 0; i < stacks[0].size(); ++i) {
            of.f[k] += stack_features({&stacks[0][i], &stacks[1][i], &stacks[2][i]});
        }
        if (of.present[k]) of.f[k] /= static_cast<double>(stacks[0].size());
    }
    return of;
}

}  // namespace lfiqa
