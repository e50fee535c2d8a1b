#include "gmrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmrank/error.hpp"

namespace gmrank {

namespace {

struct TwoTerm {
    double hi;
    double lo;
};

TwoTerm two_product(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

TwoTerm two_sum(double a, double b) {
    const double s = a + b;
    const double z = s - a;
    return {s, (a - (s - z)) + (b - z)};
}

// Dot product evaluated as if in twice the working precision (Ogita, Rump, Oishi).
double accurate_dot(std::span<const double> x, std::span<const double> y) {
    if (x.empty())
        return 0.0;
    auto [p, s] = two_product(x[0], y[0]);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const auto [h, r] = two_product(x[i], y[i]);
        const auto [sum, q] = two_sum(p, h);
        p = sum;
        s += q + r;
    }
    return p + s;
}

} // namespace

RankIndex rank_index(std::span<const double> probabilities) {
    const std::size_t n = probabilities.size();
    RankIndex index;
    index.order.resize(n);
    std::iota(index.order.begin(), index.order.end(), NodeId{0});
    std::sort(index.order.begin(), index.order.end(), [&](NodeId a, NodeId b) {
        if (probabilities[a] != probabilities[b])
            return probabilities[a] > probabilities[b];
        return a < b;
    });
    index.position.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        index.position[index.order[k]] = static_cast<Rank>(k + 1);
    return index;
}

RankIndex rank_index(const RankVector &v) { return rank_index(v.probabilities); }

RankIndex rank_index_from_positions(std::vector<Rank> positions) {
    const std::size_t n = positions.size();
    RankIndex index;
    index.order.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t node = 0; node < n; ++node) {
        const Rank k = positions[node];
        if (k < 1 || k > n || seen[k - 1])
            throw ContractViolation("rank_index_from_positions: positions are not a permutation of 1..N");
        seen[k - 1] = true;
        index.order[k - 1] = static_cast<NodeId>(node);
    }
    index.position = std::move(positions);
    return index;
}

double correlator(std::span<const double> p, std::span<const double> pstar) {
    if (p.size() != pstar.size())
        throw ContractViolation("correlator: vectors differ in length");
    const double n = static_cast<double>(p.size());
    return std::fma(n, accurate_dot(p, pstar), -1.0);
}

double correlator(const RankVector &p, const RankVector &pstar) {
    return correlator(p.probabilities, pstar.probabilities);
}

std::vector<NodeId> two_d_rank(const RankIndex &pagerank, const RankIndex &cheirank) {
    if (pagerank.size() != cheirank.size())
        throw ContractViolation("two_d_rank: index sizes differ");
    const std::size_t n = pagerank.size();
    std::vector<NodeId> order;
    order.reserve(n);
    for (Rank r = 1; r <= n; ++r) {
        const NodeId k_side = pagerank.at_rank(r);    // K == r
        const NodeId kstar_side = cheirank.at_rank(r); // K* == r
        if (k_side == kstar_side) {
            order.push_back(k_side); // corner (r, r)
            continue;
        }
        if (cheirank.rank_of(k_side) < r)
            order.push_back(k_side);
        if (pagerank.rank_of(kstar_side) < r)
            order.push_back(kstar_side);
    }
    return order;
}

RankPlane make_rank_plane(RankIndex pagerank, RankIndex cheirank) {
    RankPlane plane;
    plane.two_d_order = two_d_rank(pagerank, cheirank);
    plane.two_d_position.resize(plane.two_d_order.size());
    for (std::size_t k = 0; k < plane.two_d_order.size(); ++k)
        plane.two_d_position[plane.two_d_order[k]] = static_cast<Rank>(k + 1);
    plane.pagerank = std::move(pagerank);
    plane.cheirank = std::move(cheirank);
    return plane;
}

std::uint64_t DensityGrid::total() const { return std::accumulate(cells.begin(), cells.end(), std::uint64_t{0}); }

std::vector<double> log_boundaries(std::size_t n, std::size_t bins) {
    if (n < 2)
        throw ContractViolation("log_boundaries: need at least two nodes");
    if (bins < 1)
        throw ContractViolation("log_boundaries: need at least one bin");
    const double log_n = std::log(static_cast<double>(n));
    std::vector<double> edges(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k)
        edges[k] = std::exp(log_n * static_cast<double>(k) / static_cast<double>(bins));
    edges.front() = 1.0;
    edges.back() = static_cast<double>(n);
    for (std::size_t k = 1; k <= bins; ++k) {
        if (!(edges[k] > edges[k - 1]))
            throw ContractViolation("log_boundaries: too many bins for this node count");
    }
    return edges;
}

std::size_t cell_of(std::span<const double> edges, Rank k) {
    const std::size_t bins = edges.size() - 1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), static_cast<double>(k));
    const auto idx = static_cast<std::size_t>(std::distance(edges.begin(), it));
    if (idx == 0)
        return 0;
    return std::min(idx - 1, bins - 1);
}

DensityGrid density_grid(const RankPlane &plane, std::size_t bins) {
    const std::size_t n = plane.size();
    DensityGrid grid;
    grid.bins = bins;
    grid.k_edges = log_boundaries(n, bins);
    grid.kstar_edges = grid.k_edges;
    grid.cells.assign(bins * bins, 0);
    for (NodeId node = 0; node < n; ++node) {
        const std::size_t row = cell_of(grid.k_edges, plane.pagerank.rank_of(node));
        const std::size_t col = cell_of(grid.kstar_edges, plane.cheirank.rank_of(node));
        ++grid.cells[row * bins + col];
    }
    return grid;
}

} // namespace gmrank
