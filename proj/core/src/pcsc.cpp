#include "lfiqa/pcsc.hpp"

#include <span>

#include "lfiqa/error.hpp"
#include "lfiqa/mscn.hpp"

namespace lfiqa {

PcscResult pcsc_analyze(const std::array<Plane, 3>& pcs) {
    const auto rows = pcs[0].rows();
    const auto cols = pcs[0].cols();
    for (const auto& p : pcs) {
        if (p.rows() != rows || p.cols() != cols) throw ContractError("principal images differ in size");
    }
    PcscResult r;
    r.values.reserve(kPcscFeatureCount);
    Eigen::MatrixXd triples(rows * cols, 3);
    for (std::size_t n = 0; n < 3; ++n) {
        const MscnField m = mscn(pcs[n]);
        triples.col(static_cast<Eigen::Index>(n)) = m.coeffs.reshaped();
        r.aggd[n] = fit_aggd(std::span<const double>(m.coeffs.data(), static_cast<std::size_t>(m.coeffs.size())));
        r.dct[n] = dct_entropy(pcs[n]);
        const auto& a = r.aggd[n];
        const auto& d = r.dct[n];
        r.values.insert(r.values.end(), {a.alpha, a.sigma_l, a.sigma_r, a.eta, d.whole, d.bands[0], d.bands[1],
                                         d.bands[2], d.orients[0], d.orients[1], d.orients[2]});
    }
    r.mggd = fit_mggd(triples);
    const auto& s = r.mggd.scatter;
    r.values.insert(r.values.end(), {r.mggd.phi, r.mggd.gamma, s(0, 1), s(0, 2), s(1, 2)});
    return r;
}

std::vector<double> pcsc_features(const std::array<Plane, 3>& pcs) { return pcsc_analyze(pcs).values; }

}  // namespace lfiqa
