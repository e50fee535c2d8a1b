#include "gmrank/google_matrix.hpp"

#include <omp.h>

#include <string>
#include <vector>

namespace gmrank {

namespace detail {

namespace {

struct Neumaier {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

// Compensated sum of f(i) over [0, n). Parallel mode keeps one accumulator per
// thread over a static partition and combines them in thread order.
template <class F>
double compensated(std::ptrdiff_t n, ExecutionMode mode, F f) {
    if (mode == ExecutionMode::Deterministic) {
        Neumaier acc;
        for (std::ptrdiff_t i = 0; i < n; ++i)
            acc.add(f(i));
        return acc.value();
    }
    std::vector<Neumaier> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        Neumaier &acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            acc.add(f(i));
    }
    Neumaier total;
    for (const Neumaier &p : partial) {
        total.add(p.s);
        total.add(p.c);
    }
    return total.value();
}

} // namespace

double sum(std::span<const double> v, ExecutionMode mode) {
    return compensated(static_cast<std::ptrdiff_t>(v.size()), mode, [&](std::ptrdiff_t i) { return v[i]; });
}

double l1_distance(std::span<const double> a, std::span<const double> b, ExecutionMode mode) {
    return compensated(static_cast<std::ptrdiff_t>(a.size()), mode,
                       [&](std::ptrdiff_t i) { return std::abs(a[i] - b[i]); });
}

void scale(std::span<double> v, double factor, ExecutionMode mode) {
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) if (mode == ExecutionMode::Parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        v[i] *= factor;
}

} // namespace detail

GoogleOperator::GoogleOperator(const DirectedGraph &graph, double alpha, LinkDirection direction)
    : graph_(&graph), alpha_(alpha), direction_(direction), node_count_(graph.node_count()) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ContractViolation("GoogleOperator: alpha must lie in (0, 1)");
    inv_out_degree_.resize(node_count_);
    for (NodeId j = 0; j < node_count_; ++j) {
        const std::uint32_t k = out_degree_of(j);
        if (k == 0) {
            dangling_.push_back(j);
            inv_out_degree_[j] = 0.0;
        } else {
            inv_out_degree_[j] = 1.0 / static_cast<double>(k);
        }
    }
}

std::span<const NodeId> GoogleOperator::sources_of(NodeId n) const {
    return direction_ == LinkDirection::Forward ? graph_->in_neighbors(n) : graph_->out_neighbors(n);
}

std::uint32_t GoogleOperator::out_degree_of(NodeId n) const {
    return direction_ == LinkDirection::Forward ? graph_->out_degree(n) : graph_->in_degree(n);
}

std::vector<double> GoogleOperator::apply(std::span<const double> v, ExecutionMode mode) const {
    if (v.size() != node_count_)
        throw ContractViolation("GoogleOperator::apply: vector has length " + std::to_string(v.size()) +
                                ", operator has " + std::to_string(node_count_));
    for (double x : v) {
        if (!(x >= 0.0))
            throw ContractViolation("GoogleOperator::apply: negative or NaN entry");
    }
    if (std::abs(detail::sum(v, ExecutionMode::Deterministic) - 1.0) > 1e-9)
        throw ContractViolation("GoogleOperator::apply: input does not sum to 1");
    std::vector<double> out(node_count_);
    apply_into(v, out, mode);
    return out;
}

void GoogleOperator::apply_into(std::span<const double> in, std::span<double> out, ExecutionMode mode) const {
    const auto n = static_cast<std::ptrdiff_t>(node_count_);
    const double inv_n = 1.0 / static_cast<double>(node_count_);

    double dangling_mass = 0.0;
    for (NodeId j : dangling_)
        dangling_mass += in[j];
    const double base = (1.0 - alpha_) * inv_n + alpha_ * dangling_mass * inv_n;

    // Each out[i] is a fixed-order sum over its sources, so the gather gives
    // the same bits whether or not it runs threaded.
    const double *inv = inv_out_degree_.data();
#pragma omp parallel for schedule(dynamic, 2048) if (mode == ExecutionMode::Parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (NodeId j : sources_of(static_cast<NodeId>(i)))
            s += in[j] * inv[j];
        out[i] = base + alpha_ * s;
    }
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

DenseGoogleMatrix::DenseGoogleMatrix(const DenseMatrix &weights, double alpha) : g_(weights.size()), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ContractViolation("DenseGoogleMatrix: alpha must lie in (0, 1)");
    const std::size_t n = weights.size();
    if (n == 0)
        throw ContractViolation("DenseGoogleMatrix: empty weight matrix");
    const double teleport = (1.0 - alpha) / static_cast<double>(n);
    for (std::size_t src = 0; src < n; ++src) {
        double total = 0.0;
        for (std::size_t dst = 0; dst < n; ++dst) {
            if (!(weights(src, dst) >= 0.0))
                throw ContractViolation("DenseGoogleMatrix: weights must be non-negative");
            total += weights(src, dst);
        }
        for (std::size_t dst = 0; dst < n; ++dst) {
            const double s = total > 0.0 ? weights(src, dst) / total : 1.0 / static_cast<double>(n);
            g_(dst, src) = alpha * s + teleport;
        }
    }
}

void DenseGoogleMatrix::apply_into(std::span<const double> in, std::span<double> out, ExecutionMode) const {
    const std::size_t n = g_.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += g_(i, j) * in[j];
        out[i] = s;
    }
}

RankVector pagerank(const DirectedGraph &g, double alpha, const IterationOptions &options) {
    const GoogleOperator op(g, alpha, LinkDirection::Forward);
    return power_iterate(op, RankKind::PageRank, options);
}

RankVector cheirank(const DirectedGraph &g, double alpha, const IterationOptions &options) {
    const GoogleOperator op(g, alpha, LinkDirection::Reversed);
    return power_iterate(op, RankKind::CheiRank, options);
}

} // namespace gmrank
