#include "cdimlab/metric_graph.hpp"

#include <algorithm>
#include <queue>

#include "cdimlab/common.hpp"

namespace cdimlab {

void MetricGraph::init(std::int64_t vertices, const std::vector<double>& step_lengths) {
    n_ = vertices;
    steps_ = step_lengths;
    degree_.assign(static_cast<std::size_t>(n_), 0);
    sealed_ = false;
}

void MetricGraph::add_edge(std::int32_t a, std::int32_t b, int tag) {
    stage_a_.push_back(a);
    stage_b_.push_back(b);
    stage_t_.push_back(static_cast<std::uint8_t>(tag));
    ++degree_[static_cast<std::size_t>(a)];
    ++degree_[static_cast<std::size_t>(b)];
}

void MetricGraph::seal() {
    off_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (std::int64_t v = 0; v < n_; ++v) off_[v + 1] = off_[v] + degree_[v];
    adj_.resize(off_[n_]);
    tag_.resize(off_[n_]);
    std::vector<std::uint64_t> cursor(off_.begin(), off_.end() - 1);
    for (std::size_t e = 0; e < stage_a_.size(); ++e) {
        std::int32_t a = stage_a_[e], b = stage_b_[e];
        std::uint8_t t = stage_t_[e];
        adj_[cursor[a]] = b;
        tag_[cursor[a]++] = t;
        adj_[cursor[b]] = a;
        tag_[cursor[b]++] = t;
    }
    stage_a_.clear();
    stage_a_.shrink_to_fit();
    stage_b_.clear();
    stage_b_.shrink_to_fit();
    stage_t_.clear();
    stage_t_.shrink_to_fit();
    degree_.clear();
    degree_.shrink_to_fit();
    sealed_ = true;
}

// Lazy-deletion Dijkstra. A vertex is pushed only when its tentative distance
// strictly improves, so every vertex settles exactly once (first pop at its
// final distance); stale heap entries are skipped by the d > dist test.
void MetricGraph::run(std::vector<std::pair<double, std::int32_t>>& seeds,
                      std::vector<double>& dist, double radius,
                      std::vector<std::pair<std::int32_t, double>>* settled) const {
    if (!sealed_) fail(errc::internal, "metric graph used before seal()");
    dist.assign(static_cast<std::size_t>(n_), kInf);
    std::priority_queue<std::pair<double, std::int32_t>,
                        std::vector<std::pair<double, std::int32_t>>,
                        std::greater<>>
        pq;
    for (auto& [d0, v0] : seeds) {
        if (d0 <= radius && d0 < dist[v0]) {
            dist[v0] = d0;
            pq.push({d0, v0});
        }
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (settled) settled->push_back({v, d});
        const std::uint64_t lo = off_[v], hi = off_[static_cast<std::size_t>(v) + 1];
        for (std::uint64_t e = lo; e < hi; ++e) {
            const std::int32_t w = adj_[e];
            const double nd = d + steps_[tag_[e]];
            if (nd < dist[w] && nd <= radius) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
}

void MetricGraph::dijkstra(std::int32_t src, std::vector<double>& dist) const {
    std::vector<std::pair<double, std::int32_t>> seeds{{0.0, src}};
    run(seeds, dist, kInf, nullptr);
}

void MetricGraph::dijkstra_multi(const std::vector<std::int32_t>& srcs,
                                 std::vector<double>& dist) const {
    std::vector<std::pair<double, std::int32_t>> seeds;
    seeds.reserve(srcs.size());
    for (auto s : srcs) seeds.push_back({0.0, s});
    run(seeds, dist, kInf, nullptr);
}

// Self-contained truncated scan. The shared distance buffer is kept at +inf
// between calls and only the entries touched by this ball are reset on exit,
// so the cost is proportional to the ball, not to the graph.
void MetricGraph::dijkstra_ball(std::int32_t src, double radius,
                                std::vector<std::pair<std::int32_t, double>>& out) const {
    if (!sealed_) fail(errc::internal, "metric graph used before seal()");
    out.clear();
    if (scratch_.size() != static_cast<std::size_t>(n_)) {
        scratch_.assign(static_cast<std::size_t>(n_), kInf);
    }
    std::priority_queue<std::pair<double, std::int32_t>,
                        std::vector<std::pair<double, std::int32_t>>,
                        std::greater<>>
        pq;
    scratch_[src] = 0.0;
    touched_.push_back(src);
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > scratch_[v]) continue;
        out.push_back({v, d});
        const std::uint64_t lo = off_[v], hi = off_[static_cast<std::size_t>(v) + 1];
        for (std::uint64_t e = lo; e < hi; ++e) {
            const std::int32_t w = adj_[e];
            const double nd = d + steps_[tag_[e]];
            if (nd < scratch_[w] && nd <= radius) {
                scratch_[w] = nd;
                touched_.push_back(w);
                pq.push({nd, w});
            }
        }
    }
    for (auto v : touched_) scratch_[v] = kInf;
    touched_.clear();
}

}  // namespace cdimlab
