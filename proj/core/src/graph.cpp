#include "gmrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <limits>
#include <unordered_map>

#include "gmrank/error.hpp"

namespace gmrank {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits on runs of blanks; returns the number of tokens seen (stops counting at 3).
int tokenize(std::string_view line, std::string_view &first, std::string_view &second) {
    int count = 0;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        if (i == line.size())
            break;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i]))
            ++i;
        const std::string_view tok = line.substr(start, i - start);
        if (count == 0)
            first = tok;
        else if (count == 1)
            second = tok;
        if (++count == 3)
            break;
    }
    return count;
}

NodeId parse_dense_id(std::string_view tok, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "identifier '" + std::string(tok) + "' is not a non-negative integer");
    if (value >= std::numeric_limits<NodeId>::max())
        throw ParseError(line_no, "identifier '" + std::string(tok) + "' exceeds the supported node range");
    return static_cast<NodeId>(value);
}

// Counting sort of (already source-sorted, duplicate-free) edges into both CSR
// directions. Iterating in (source, target) order leaves every in-list sorted.
template <class Adjacency>
void build_csr(std::size_t n, const std::vector<Edge> &edges, Adjacency &out, Adjacency &in) {
    out.offsets.assign(n + 1, 0);
    in.offsets.assign(n + 1, 0);
    for (const Edge &e : edges) {
        ++out.offsets[e.source + 1];
        ++in.offsets[e.target + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.offsets[i + 1] += out.offsets[i];
        in.offsets[i + 1] += in.offsets[i];
    }
    out.neighbors.resize(edges.size());
    in.neighbors.resize(edges.size());
    std::vector<EdgeIndex> cursor(in.offsets.begin(), in.offsets.end() - 1);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        out.neighbors[k] = edges[k].target;
        in.neighbors[cursor[edges[k].target]++] = edges[k].source;
    }
}

} // namespace

DirectedGraph DirectedGraph::from_edges(std::size_t node_count, std::vector<Edge> edges,
                                        std::vector<std::string> external_ids) {
    if (node_count >= std::numeric_limits<NodeId>::max())
        throw ContractViolation("from_edges: node count exceeds NodeId range");
    if (!external_ids.empty() && external_ids.size() != node_count)
        throw ContractViolation("from_edges: external_ids must have one entry per node");
    for (const Edge &e : edges) {
        if (e.source >= node_count || e.target >= node_count)
            throw ContractViolation("from_edges: edge endpoint out of range");
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    DirectedGraph g;
    build_csr(node_count, edges, g.out_, g.in_);
    g.external_ids_ = std::move(external_ids);
    return g;
}

bool DirectedGraph::has_edge(NodeId source, NodeId target) const {
    const auto nbrs = out_neighbors(source);
    return std::binary_search(nbrs.begin(), nbrs.end(), target);
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (NodeId s = 0; s < node_count(); ++s) {
        for (NodeId t : out_neighbors(s))
            result.push_back({s, t});
    }
    return result;
}

std::string DirectedGraph::external_id(NodeId n) const {
    if (!external_ids_.empty())
        return external_ids_[n];
    return std::to_string(n);
}

std::optional<NodeId> DirectedGraph::find_external_id(std::string_view id) const {
    if (external_ids_.empty()) {
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
        if (ec != std::errc{} || ptr != id.data() + id.size() || value >= node_count())
            return std::nullopt;
        return static_cast<NodeId>(value);
    }
    const auto it = std::find(external_ids_.begin(), external_ids_.end(), id);
    if (it == external_ids_.end())
        return std::nullopt;
    return static_cast<NodeId>(it - external_ids_.begin());
}

std::string_view DirectedGraph::label(NodeId n) const {
    if (labels_.empty())
        return {};
    return labels_[n];
}

std::optional<NodeId> DirectedGraph::find_label(std::string_view title) const {
    const auto it = std::find(labels_.begin(), labels_.end(), title);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<NodeId>(it - labels_.begin());
}

DirectedGraph DirectedGraph::with_labels(std::vector<std::string> labels) const {
    if (labels.size() != node_count())
        throw ContractViolation("with_labels: one label per node required");
    DirectedGraph g = *this;
    g.labels_ = std::move(labels);
    return g;
}

DirectedGraph DirectedGraph::reversed() const {
    DirectedGraph g;
    g.out_ = in_;
    g.in_ = out_;
    g.external_ids_ = external_ids_;
    g.labels_ = labels_;
    return g;
}

DirectedGraph reverse(const DirectedGraph &g) { return g.reversed(); }

DegreeVectors degrees(const DirectedGraph &g) {
    DegreeVectors d;
    d.in.resize(g.node_count());
    d.out.resize(g.node_count());
    for (NodeId n = 0; n < g.node_count(); ++n) {
        d.in[n] = g.in_degree(n);
        d.out[n] = g.out_degree(n);
    }
    return d;
}

DirectedGraph parse_edge_list(std::string_view text, IdMode mode) {
    std::vector<Edge> edges;
    std::vector<std::string> ids;
    std::unordered_map<std::string, NodeId> id_of;
    std::size_t node_count = 0;

    auto intern = [&](std::string_view tok) -> NodeId {
        auto [it, inserted] = id_of.try_emplace(std::string(tok), static_cast<NodeId>(ids.size()));
        if (inserted)
            ids.emplace_back(tok);
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto first = std::find_if_not(line.begin(), line.end(), is_space);
        if (first == line.end() || *first == '#')
            continue;

        std::string_view a, b;
        const int tokens = tokenize(line, a, b);
        if (tokens != 2)
            throw ParseError(line_no, "expected 'source target', found " +
                                          std::string(tokens > 2 ? "more than two" : "one") + " token(s)");

        if (mode == IdMode::DenseInteger) {
            const NodeId s = parse_dense_id(a, line_no);
            const NodeId t = parse_dense_id(b, line_no);
            node_count = std::max<std::size_t>(node_count, std::max(s, t) + std::size_t{1});
            edges.push_back({s, t});
        } else {
            const NodeId s = intern(a);
            const NodeId t = intern(b);
            edges.push_back({s, t});
        }
    }

    if (mode == IdMode::ArbitraryString) {
        node_count = ids.size();
        return DirectedGraph::from_edges(node_count, std::move(edges), std::move(ids));
    }
    return DirectedGraph::from_edges(node_count, std::move(edges));
}

DirectedGraph parse_edge_list(std::istream &in, IdMode mode) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_edge_list(std::string_view(text), mode);
}

DirectedGraph attach_labels(const DirectedGraph &g, std::istream &in) {
    std::unordered_map<std::string, NodeId> node_of;
    node_of.reserve(g.node_count());
    for (NodeId n = 0; n < g.node_count(); ++n)
        node_of.emplace(g.external_id(n), n);

    std::vector<std::string> labels(g.node_count());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(line_no, "expected 'node_id<TAB>title'");
        const auto it = node_of.find(line.substr(0, tab));
        if (it == node_of.end())
            throw ParseError(line_no, "unknown node id '" + line.substr(0, tab) + "'");
        labels[it->second] = line.substr(tab + 1);
    }
    return g.with_labels(std::move(labels));
}

} // namespace gmrank
