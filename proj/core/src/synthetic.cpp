#include "gmrank/synthetic.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace gmrank::synthetic {

DirectedGraph random_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed, bool allow_self_loops) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> list;
    list.reserve(edges);
    if (nodes == 0)
        return DirectedGraph::from_edges(0, {});
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(nodes - 1));
    while (list.size() < edges) {
        const NodeId s = pick(rng);
        const NodeId t = pick(rng);
        if (s == t && (!allow_self_loops || nodes == 1)) {
            if (nodes == 1)
                break;
            continue;
        }
        list.push_back({s, t});
    }
    return DirectedGraph::from_edges(nodes, std::move(list));
}

DirectedGraph preferential_attachment(std::size_t nodes, std::size_t out_per_node, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> list;
    list.reserve(nodes * out_per_node);
    // Every node appears once, plus once per incoming link: sampling uniformly
    // from the pool is sampling proportional to in-degree + 1.
    std::vector<NodeId> pool;
    pool.reserve(nodes + nodes * out_per_node);
    std::vector<NodeId> chosen;

    for (std::size_t t = 0; t < nodes; ++t) {
        const auto node = static_cast<NodeId>(t);
        chosen.clear();
        if (t <= out_per_node) {
            for (NodeId prev = 0; prev < node; ++prev)
                chosen.push_back(prev);
        } else {
            while (chosen.size() < out_per_node) {
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                const NodeId target = pool[pick(rng)];
                if (std::find(chosen.begin(), chosen.end(), target) == chosen.end())
                    chosen.push_back(target);
            }
        }
        for (NodeId target : chosen) {
            list.push_back({node, target});
            pool.push_back(target);
        }
        pool.push_back(node);
    }
    return DirectedGraph::from_edges(nodes, std::move(list));
}

} // namespace gmrank::synthetic
