#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace lfiqa {

/// f(q) = b1 (1/2 - 1/(1 + exp(b2 (q - b3)))) + b4 q + b5
struct LogisticParams {
    std::array<double, 5> beta{};
};

[[nodiscard]] double logistic_eval(const LogisticParams& p, double q);

/// Least-squares fit by Nelder-Mead from the standard start
/// (range(mos), 1/std(q), mean(q), 0, mean(mos)), 10 jittered restarts and
/// the ordinary least-squares affine start; the lowest SSE wins. Needs 5 pairs.
[[nodiscard]] LogisticParams logistic_fit(std::span<const double> q, std::span<const double> mos,
                                          std::uint64_t seed = 0x6c6f6769u);

[[nodiscard]] double logistic_sse(const LogisticParams& p, std::span<const double> q, std::span<const double> mos);

}  // namespace lfiqa
