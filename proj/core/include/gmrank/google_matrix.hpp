#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "gmrank/error.hpp"
#include "gmrank/graph.hpp"

namespace gmrank {

inline constexpr double kDefaultAlpha = 0.85;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxIterations = 1000;

enum class RankKind { PageRank, CheiRank };

/// Forward follows links as stored (PageRank); Reversed follows them
/// backwards (CheiRank) without materializing the inverted graph.
enum class LinkDirection { Forward, Reversed };

/// Parallel reductions may reorder floating-point sums; Deterministic runs
/// every reduction sequentially so repeated runs are bit-identical.
enum class ExecutionMode { Parallel, Deterministic };

struct IterationOptions {
    double tolerance = kDefaultTolerance;
    std::size_t max_iterations = kDefaultMaxIterations;
    ExecutionMode mode = ExecutionMode::Parallel;
};

/// Stationary probability vector of a Google matrix.
///
/// When `converged` is false the vector holds the last iterate; callers must
/// check the flag rather than assume success.
struct RankVector {
    std::vector<double> probabilities;
    RankKind kind = RankKind::PageRank;
    std::size_t iterations_used = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history; // L1 change per iteration

    std::size_t size() const noexcept { return probabilities.size(); }
};

/**
 * Implicit Google matrix G = alpha * S + (1 - alpha) / N over a DirectedGraph.
 *
 * S is the column-normalized adjacency with dangling columns replaced by 1/N.
 * Neither S nor G is ever stored: dangling columns are applied as a rank-one
 * correction and the rest is a pull over in-neighbours. Self-loops count
 * toward out-degree like any other link.
 *
 * The graph must outlive the operator.
 */
class GoogleOperator {
public:
    explicit GoogleOperator(const DirectedGraph &graph, double alpha = kDefaultAlpha,
                            LinkDirection direction = LinkDirection::Forward);

    std::size_t size() const noexcept { return node_count_; }
    double alpha() const noexcept { return alpha_; }
    LinkDirection direction() const noexcept { return direction_; }
    std::span<const NodeId> dangling_nodes() const noexcept { return dangling_; }

    /// Checked application: v must be a probability vector of length N
    /// (entries >= 0, sum within 1e-9 of 1).
    std::vector<double> apply(std::span<const double> v,
                              ExecutionMode mode = ExecutionMode::Parallel) const;

    /// Unchecked application into caller-owned storage; `in` and `out` must
    /// not alias.
    void apply_into(std::span<const double> in, std::span<double> out, ExecutionMode mode) const;

private:
    std::span<const NodeId> sources_of(NodeId n) const;
    std::uint32_t out_degree_of(NodeId n) const;

    const DirectedGraph *graph_;
    double alpha_;
    LinkDirection direction_;
    std::size_t node_count_;
    std::vector<NodeId> dangling_;
    std::vector<double> inv_out_degree_; // 1 / k_out(j), 0 for dangling j
};

/// Row-major dense square matrix; only meant for small networks.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double &operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

    DenseMatrix transposed() const;

    friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/**
 * Materialized Google matrix for small weighted networks.
 *
 * Built from a non-negative weight matrix where weights(a, b) is the weight of
 * the transition a -> b. Column a of S holds a's outgoing weights normalized
 * to unit sum; all-zero columns become uniform.
 */
class DenseGoogleMatrix {
public:
    DenseGoogleMatrix(const DenseMatrix &weights, double alpha = kDefaultAlpha);

    std::size_t size() const noexcept { return g_.size(); }
    double alpha() const noexcept { return alpha_; }
    const DenseMatrix &matrix() const noexcept { return g_; }

    void apply_into(std::span<const double> in, std::span<double> out, ExecutionMode mode) const;

private:
    DenseMatrix g_; // g_(i, j) = G_ij, column-stochastic
    double alpha_;
};

template <class Op>
concept StochasticOperator = requires(const Op &op, std::span<const double> in, std::span<double> out) {
    { op.size() } -> std::convertible_to<std::size_t>;
    op.apply_into(in, out, ExecutionMode::Deterministic);
};

namespace detail {

double sum(std::span<const double> v, ExecutionMode mode);
double l1_distance(std::span<const double> a, std::span<const double> b, ExecutionMode mode);
void scale(std::span<double> v, double factor, ExecutionMode mode);

} // namespace detail

/**
 * Power iteration from the uniform vector until the L1 change between
 * successive iterates drops below `options.tolerance`, or
 * `options.max_iterations` is reached (then `converged` is false).
 *
 * Each iterate is renormalized to unit sum so rounding drift cannot
 * accumulate over long runs.
 */
template <StochasticOperator Op>
RankVector power_iterate(const Op &op, RankKind kind, const IterationOptions &options = {}) {
    if (!(options.tolerance > 0.0))
        throw ContractViolation("power_iterate: tolerance must be positive");
    if (options.max_iterations < 1)
        throw ContractViolation("power_iterate: max_iterations must be at least 1");

    const std::size_t n = op.size();
    RankVector result;
    result.kind = kind;
    if (n == 0) {
        result.converged = true;
        return result;
    }

    std::vector<double> current(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        op.apply_into(current, next, options.mode);
        detail::scale(next, 1.0 / detail::sum(next, options.mode), options.mode);
        const double residual = detail::l1_distance(current, next, options.mode);
        current.swap(next);

        result.iterations_used = it;
        result.residual = residual;
        result.residual_history.push_back(residual);
        if (residual < options.tolerance) {
            result.converged = true;
            break;
        }
    }
    result.probabilities = std::move(current);
    return result;
}

RankVector pagerank(const DirectedGraph &g, double alpha = kDefaultAlpha, const IterationOptions &options = {});

/// PageRank of the link-inverted graph. Bit-identical to
/// pagerank(reverse(g)) in deterministic mode.
RankVector cheirank(const DirectedGraph &g, double alpha = kDefaultAlpha, const IterationOptions &options = {});

} // namespace gmrank
