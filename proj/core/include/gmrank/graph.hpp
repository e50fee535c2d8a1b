#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gmrank {

/// Dense node index in [0, node_count).
using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;

struct Edge {
    NodeId source;
    NodeId target;

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// How raw identifiers in an edge list map onto NodeIds.
enum class IdMode {
    DenseInteger,    ///< identifier is the NodeId itself
    ArbitraryString, ///< NodeIds assigned in order of first appearance
};

/**
 * Immutable directed graph with binary adjacency.
 *
 * Both the forward (per-source) and backward (per-target) adjacency are kept
 * in compressed sparse row form, so out- and in-neighbour traversal are both
 * O(degree). Neighbour lists are sorted ascending. Duplicate edges never
 * exist; self-loops are kept.
 */
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds a graph from an arbitrary edge list. Duplicates are collapsed.
    /// `external_ids`, when non-empty, must hold one identifier per node.
    static DirectedGraph from_edges(std::size_t node_count, std::vector<Edge> edges,
                                    std::vector<std::string> external_ids = {});

    std::size_t node_count() const noexcept { return out_.offsets.empty() ? 0 : out_.offsets.size() - 1; }
    std::size_t edge_count() const noexcept { return out_.neighbors.size(); }

    std::span<const NodeId> out_neighbors(NodeId n) const { return out_.neighbors_of(n); }
    std::span<const NodeId> in_neighbors(NodeId n) const { return in_.neighbors_of(n); }
    std::uint32_t out_degree(NodeId n) const { return out_.degree(n); }
    std::uint32_t in_degree(NodeId n) const { return in_.degree(n); }

    bool has_edge(NodeId source, NodeId target) const;

    /// All edges, sorted by (source, target).
    std::vector<Edge> edges() const;

    /// Identifier as it appeared in the input: the raw string in string mode,
    /// the decimal index otherwise.
    std::string external_id(NodeId n) const;
    std::optional<NodeId> find_external_id(std::string_view id) const;

    /// Human-readable titles attached from a label file.
    bool has_labels() const noexcept { return !labels_.empty(); }
    std::string_view label(NodeId n) const;
    std::optional<NodeId> find_label(std::string_view title) const;

    /// Returns a copy carrying `labels` (one entry per node, may be empty strings).
    DirectedGraph with_labels(std::vector<std::string> labels) const;

    /// Same node set, every edge inverted. O(N + E), shares no state with *this.
    DirectedGraph reversed() const;

    friend bool operator==(const DirectedGraph &, const DirectedGraph &) = default;

private:
    struct Adjacency {
        std::vector<EdgeIndex> offsets; // node_count + 1 entries
        std::vector<NodeId> neighbors;

        std::span<const NodeId> neighbors_of(NodeId n) const {
            return {neighbors.data() + offsets[n], neighbors.data() + offsets[n + 1]};
        }
        std::uint32_t degree(NodeId n) const { return static_cast<std::uint32_t>(offsets[n + 1] - offsets[n]); }

        friend bool operator==(const Adjacency &, const Adjacency &) = default;
    };

    Adjacency out_;
    Adjacency in_;
    std::vector<std::string> external_ids_; // empty in dense mode
    std::vector<std::string> labels_;
};

/// Parses a whitespace separated "source target" edge list. '#' starts a
/// comment line; blank lines are skipped. Throws ParseError.
///
/// In dense mode the node count is one past the largest identifier seen, so
/// identifiers that never occur become isolated nodes.
DirectedGraph parse_edge_list(std::istream &in, IdMode mode);
DirectedGraph parse_edge_list(std::string_view text, IdMode mode);

/// Reads "node_id<TAB>title" lines; node_id is resolved against the graph's
/// external identifiers. Unknown ids are a ParseError.
DirectedGraph attach_labels(const DirectedGraph &g, std::istream &labels);

DirectedGraph reverse(const DirectedGraph &g);

struct DegreeVectors {
    std::vector<std::uint32_t> in;
    std::vector<std::uint32_t> out;
};

DegreeVectors degrees(const DirectedGraph &g);

} // namespace gmrank
