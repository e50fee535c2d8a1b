#pragma once

#include <cstddef>
#include <cstdint>

#include "gmrank/graph.hpp"

namespace gmrank::synthetic {

/// Uniform random directed graph with `edges` draws (duplicates collapse, so
/// the final edge count can be lower). Self-loops only if allowed.
DirectedGraph random_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed, bool allow_self_loops = true);

/**
 * Directed preferential attachment: node t links to `out_per_node` earlier
 * nodes, each chosen with probability proportional to (in-degree + 1).
 * Early nodes link to every predecessor; node 0 is dangling.
 */
DirectedGraph preferential_attachment(std::size_t nodes, std::size_t out_per_node, std::uint64_t seed);

} // namespace gmrank::synthetic
