#pragma once

#include <cstddef>
#include <span>

#include "gmrank/google_matrix.hpp"
#include "gmrank/ranking.hpp"

namespace gmrank {

/// P(K) ~ amplitude / K^exponent, fitted over k_min..k_max inclusive.
struct PowerLawFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double stderr_exponent = 0.0;
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    std::size_t points = 0; // ranks actually used (positive probability)
};

/// Ordinary least squares of ln P against ln K. `by_rank[K - 1]` is the
/// probability at rank K. Ranks with non-positive probability are skipped;
/// fewer than three usable points throws InsufficientData.
PowerLawFit fit_power_law(std::span<const double> by_rank, std::size_t k_min, std::size_t k_max);

PowerLawFit fit_power_law(const RankVector &probabilities, const RankIndex &index, std::size_t k_min,
                          std::size_t k_max);

} // namespace gmrank
