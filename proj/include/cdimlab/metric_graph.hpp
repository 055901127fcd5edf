#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace cdimlab {

// Weighted undirected graph in CSR form used as the intrinsic-metric
// approximation of a square complex. Edge weights are quantised to a small
// set of step lengths (axis steps and the diagonal) stored per graph, which
// keeps the edge array at one int32 + one tag byte per direction.
class MetricGraph {
public:
    MetricGraph() = default;

    // Builder interface: reserve with vertex count, then add edges, then seal.
    void init(std::int64_t vertices, const std::vector<double>& step_lengths);
    void add_edge(std::int32_t a, std::int32_t b, int tag);
    void seal();

    std::int64_t vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size()) / 2; }
    double step(int tag) const { return steps_[static_cast<std::size_t>(tag)]; }

    // Single-source shortest paths into a caller-provided buffer
    // (resized/reset internally). Unreachable vertices get +inf.
    void dijkstra(std::int32_t src, std::vector<double>& dist) const;
    void dijkstra_multi(const std::vector<std::int32_t>& srcs, std::vector<double>& dist) const;

    // Truncated single-source scan: returns (vertex, distance) pairs with
    // distance <= radius, in settle order. Cost proportional to the ball.
    void dijkstra_ball(std::int32_t src, double radius,
                       std::vector<std::pair<std::int32_t, double>>& out) const;

private:
    void run(std::vector<std::pair<double, std::int32_t>>& seeds, std::vector<double>& dist,
             double radius, std::vector<std::pair<std::int32_t, double>>* settled) const;

    std::int64_t n_ = 0;
    std::vector<double> steps_;
    std::vector<std::uint64_t> off_;
    std::vector<std::int32_t> adj_;
    std::vector<std::uint8_t> tag_;
    // staging
    std::vector<std::uint32_t> degree_;
    std::vector<std::int32_t> stage_a_, stage_b_;
    std::vector<std::uint8_t> stage_t_;
    bool sealed_ = false;
    mutable std::vector<double> scratch_;  // reusable distance buffer for dijkstra_ball
    mutable std::vector<std::int32_t> touched_;
};

}  // namespace cdimlab
