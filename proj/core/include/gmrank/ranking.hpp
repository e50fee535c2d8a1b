#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gmrank/google_matrix.hpp"
#include "gmrank/graph.hpp"

namespace gmrank {

/// 1-based rank position (K, K* or K2).
using Rank = std::uint32_t;

/// Nodes sorted by descending probability, ties by ascending NodeId.
struct RankIndex {
    std::vector<NodeId> order;  // order[K - 1] is the node at rank K
    std::vector<Rank> position; // position[node] = K

    std::size_t size() const noexcept { return order.size(); }
    Rank rank_of(NodeId n) const { return position[n]; }
    NodeId at_rank(Rank k) const { return order[k - 1]; }
};

RankIndex rank_index(std::span<const double> probabilities);
RankIndex rank_index(const RankVector &v);

/// Builds a RankIndex from explicit 1-based positions; throws
/// ContractViolation unless `positions` is a permutation of 1..N.
RankIndex rank_index_from_positions(std::vector<Rank> positions);

/// kappa = N * sum_i P(i) P*(i) - 1, with a compensated dot product.
double correlator(std::span<const double> p, std::span<const double> pstar);
double correlator(const RankVector &p, const RankVector &pstar);

/**
 * 2DRank ordering. Squares of side r = 1..N are grown in the (K, K*) plane and
 * the nodes on each new rib (max(K, K*) == r) are appended in a fixed order:
 * the node with K == r and K* < r, then the corner (r, r), then the node with
 * K* == r and K < r. Since K and K* are permutations a rib holds at most two
 * nodes, so the whole pass is O(N).
 *
 * Returns nodes in K2 order (element 0 has K2 = 1).
 */
std::vector<NodeId> two_d_rank(const RankIndex &pagerank, const RankIndex &cheirank);

struct RankPlane {
    RankIndex pagerank;
    RankIndex cheirank;
    std::vector<NodeId> two_d_order;
    std::vector<Rank> two_d_position; // K2 per node

    std::size_t size() const noexcept { return pagerank.size(); }
};

RankPlane make_rank_plane(RankIndex pagerank, RankIndex cheirank);

inline constexpr std::size_t kDefaultDensityBins = 100;

/// Counts of nodes over log-spaced (K, K*) cells. Row = K bin, column = K* bin.
struct DensityGrid {
    std::size_t bins = 0;
    std::vector<double> k_edges;     // bins + 1 boundaries, first 1, last N
    std::vector<double> kstar_edges; // identical to k_edges, kept for plotting tools
    std::vector<std::uint64_t> cells;

    std::uint64_t at(std::size_t row, std::size_t col) const { return cells[row * bins + col]; }
    std::uint64_t total() const;
};

/// Geometric progression 1 = e_0 < e_1 < ... < e_bins = n.
std::vector<double> log_boundaries(std::size_t n, std::size_t bins);

/// Cell holding rank k: the last i with edges[i] <= k, clamped so k = N lands
/// in the final (right-closed) cell.
std::size_t cell_of(std::span<const double> edges, Rank k);

DensityGrid density_grid(const RankPlane &plane, std::size_t bins = kDefaultDensityBins);

} // namespace gmrank
