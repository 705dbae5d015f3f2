#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lfiqa/image.hpp"

namespace lfiqa::testing {

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("lfiqa_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Zero-mode asymmetric generalised Gaussian sampler. Each side is a
/// half-GGD: |x| = beta * G^(1/alpha) with G ~ Gamma(1/alpha, 1), and the
/// left side is chosen with probability beta_l / (beta_l + beta_r).
inline std::vector<double> sample_aggd(double alpha, double sigma_l, double sigma_r, std::size_t n,
                                       std::uint64_t seed) {
    const double k = std::sqrt(std::tgamma(1.0 / alpha) / std::tgamma(3.0 / alpha));
    const double bl = sigma_l * k;
    const double br = sigma_r * k;
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(1.0 / alpha, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& x : out) {
        const double mag = std::pow(gamma(rng), 1.0 / alpha);
        x = unit(rng) < bl / (bl + br) ? -bl * mag : br * mag;
    }
    return out;
}

/// Rows drawn from N(0, cov) through a Cholesky factor.
inline Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& cov, Eigen::Index n, std::uint64_t seed) {
    const Eigen::MatrixXd l = cov.llt().matrixL();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(n, cov.rows());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < cov.rows(); ++j) z(i, j) = normal(rng);
    return z * l.transpose();
}

inline Plane random_plane(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    Plane p(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) p(i, j) = u(rng);
    return p;
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Textbook Pearson correlation, two passes.
inline double naive_pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

/// Mid-ranks by counting: rank = 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> naive_ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0.0;
        double equal = 0.0;
        for (double x : v) {
            if (x < v[i]) less += 1.0;
            if (x == v[i]) equal += 1.0;
        }
        r[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    return r;
}

inline double naive_spearman(const std::vector<double>& a, const std::vector<double>& b) {
    return naive_pearson(naive_ranks(a), naive_ranks(b));
}

}  // namespace lfiqa::testing
