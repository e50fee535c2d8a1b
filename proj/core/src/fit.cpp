#include "gmrank/fit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gmrank/error.hpp"

namespace gmrank {

PowerLawFit fit_power_law(std::span<const double> by_rank, std::size_t k_min, std::size_t k_max) {
    if (k_min < 1 || k_min >= k_max || k_max > by_rank.size())
        throw ContractViolation("fit_power_law: need 1 <= k_min < k_max <= N (N = " + std::to_string(by_rank.size()) +
                                ")");

    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const double p = by_rank[k - 1];
        if (p > 0.0) {
            xs.push_back(std::log(static_cast<double>(k)));
            ys.push_back(std::log(p));
        }
    }
    const std::size_t m = xs.size();
    if (m < 3)
        throw InsufficientData("fit_power_law: " + std::to_string(m) + " usable point(s) in [" +
                               std::to_string(k_min) + ", " + std::to_string(k_max) + "], need at least 3");

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;

    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ssr += r * r;
    }

    PowerLawFit fit;
    fit.exponent = -slope;
    fit.amplitude = std::exp(intercept);
    fit.stderr_exponent = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
    fit.k_min = k_min;
    fit.k_max = k_max;
    fit.points = m;
    return fit;
}

PowerLawFit fit_power_law(const RankVector &probabilities, const RankIndex &index, std::size_t k_min,
                          std::size_t k_max) {
    if (probabilities.size() != index.size())
        throw ContractViolation("fit_power_law: rank vector and index differ in size");
    std::vector<double> by_rank(index.size());
    for (std::size_t k = 0; k < index.size(); ++k)
        by_rank[k] = probabilities.probabilities[index.order[k]];
    return fit_power_law(by_rank, k_min, k_max);
}

} // namespace gmrank
