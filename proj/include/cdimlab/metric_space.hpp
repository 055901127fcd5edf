#pragma once

#include <memory>
#include <vector>

#include "cdimlab/common.hpp"
#include "cdimlab/metric_graph.hpp"

namespace cdimlab {

using PointId = int;
using Subset = std::vector<PointId>;  // kept sorted, no duplicates

// Finite pseudo-sample of a metric space. Three realizations:
//   * explicit n x n matrix,
//   * coordinate points with the Euclidean or sup metric,
//   * vertices of a shared MetricGraph (intrinsic distances via Dijkstra).
// Graph-backed spaces carry a nonzero tol(): their distances overestimate the
// underlying intrinsic metric by at most that relative amount.
class FiniteMetricSpace {
public:
    enum class Metric { euclidean, sup };

    FiniteMetricSpace() = default;

    static FiniteMetricSpace from_matrix(int n, std::vector<double> matrix);
    static FiniteMetricSpace from_coords(std::vector<std::vector<double>> pts, Metric metric);
    static FiniteMetricSpace from_graph(std::shared_ptr<const MetricGraph> graph,
                                        std::vector<std::int32_t> vertices, double tol);

    int size() const { return n_; }
    double dist(PointId i, PointId j) const;
    // Full row of distances from i; cached when n <= cache cap.
    const std::vector<double>& dist_row(PointId i) const;
    double tol() const { return tol_; }

    bool is_matrix() const { return kind_ == Kind::matrix; }
    bool is_coords() const { return kind_ == Kind::coords; }
    bool is_graph() const { return kind_ == Kind::graph; }
    Metric coord_metric() const { return metric_; }
    const std::vector<std::vector<double>>& coords() const { return pts_; }
    const MetricGraph* graph() const { return graph_.get(); }
    const std::vector<std::int32_t>& graph_vertices() const { return verts_; }

    double diameter() const;

    // Restriction to a subset of point ids; the result is matrix-realized and
    // indexed 0..|ids|-1 in the order given.
    FiniteMetricSpace restrict(const Subset& ids) const;

    void set_cache_cap(int cap) { cache_cap_ = cap; }

private:
    enum class Kind { matrix, coords, graph };

    double compute(PointId i, PointId j) const;
    void ensure_row(PointId i) const;

    Kind kind_ = Kind::matrix;
    int n_ = 0;
    double tol_ = 0.0;
    std::vector<double> mat_;
    std::vector<std::vector<double>> pts_;
    Metric metric_ = Metric::euclidean;
    std::shared_ptr<const MetricGraph> graph_;
    std::vector<std::int32_t> verts_;
    std::vector<std::int32_t> vert_index_;  // graph vertex -> sample index + 1, 0 = absent

    int cache_cap_ = 5000;
    mutable std::vector<std::vector<double>> row_cache_;
    mutable std::vector<double> tmp_row_;
    mutable std::vector<double> dist_buf_;
};

// dist(A, B) = min over pairs; empty operands are rejected.
double set_distance(const FiniteMetricSpace& X, const Subset& a, const Subset& b);

// B_r(U) in X: r > 0 open enlargement, r = 0 identity, r < 0 inner shrink
// (points of U farther than |r| from the complement of U).
Subset neighborhood(const FiniteMetricSpace& X, const Subset& u, double r);

double subset_diameter(const FiniteMetricSpace& X, const Subset& u);

}  // namespace cdimlab
