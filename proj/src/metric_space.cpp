#include "cdimlab/metric_space.hpp"

#include <algorithm>
#include <cmath>

namespace cdimlab {

FiniteMetricSpace FiniteMetricSpace::from_matrix(int n, std::vector<double> matrix) {
    if (n < 0 || matrix.size() != static_cast<std::size_t>(n) * n)
        fail(errc::bad_input, "distance matrix size does not match point count");
    for (int i = 0; i < n; ++i) {
        if (matrix[static_cast<std::size_t>(i) * n + i] != 0.0)
            fail(errc::bad_input, "distance matrix has nonzero diagonal");
        for (int j = 0; j < i; ++j) {
            double dij = matrix[static_cast<std::size_t>(i) * n + j];
            double dji = matrix[static_cast<std::size_t>(j) * n + i];
            if (dij != dji) fail(errc::bad_input, "distance matrix is not symmetric");
            if (dij < 0.0) fail(errc::bad_input, "distance matrix has a negative entry");
        }
    }
    FiniteMetricSpace X;
    X.kind_ = Kind::matrix;
    X.n_ = n;
    X.mat_ = std::move(matrix);
    return X;
}

FiniteMetricSpace FiniteMetricSpace::from_coords(std::vector<std::vector<double>> pts,
                                                 Metric metric) {
    FiniteMetricSpace X;
    X.kind_ = Kind::coords;
    X.n_ = static_cast<int>(pts.size());
    if (!pts.empty()) {
        std::size_t d = pts.front().size();
        for (const auto& p : pts)
            if (p.size() != d) fail(errc::bad_input, "coordinate rows have mixed dimensions");
    }
    X.pts_ = std::move(pts);
    X.metric_ = metric;
    return X;
}

FiniteMetricSpace FiniteMetricSpace::from_graph(std::shared_ptr<const MetricGraph> graph,
                                                std::vector<std::int32_t> vertices, double tol) {
    FiniteMetricSpace X;
    X.kind_ = Kind::graph;
    X.n_ = static_cast<int>(vertices.size());
    X.graph_ = std::move(graph);
    X.verts_ = std::move(vertices);
    X.tol_ = tol;
    return X;
}

double FiniteMetricSpace::compute(PointId i, PointId j) const {
    switch (kind_) {
        case Kind::matrix:
            return mat_[static_cast<std::size_t>(i) * n_ + j];
        case Kind::coords: {
            const auto& a = pts_[i];
            const auto& b = pts_[j];
            if (metric_ == Metric::euclidean) {
                double s = 0.0;
                for (std::size_t t = 0; t < a.size(); ++t) {
                    double d = a[t] - b[t];
                    s += d * d;
                }
                return std::sqrt(s);
            }
            double m = 0.0;
            for (std::size_t t = 0; t < a.size(); ++t) m = std::max(m, std::fabs(a[t] - b[t]));
            return m;
        }
        case Kind::graph:
            break;
    }
    // graph-backed pairwise query: go through the row machinery
    return dist_row(i)[j];
}

void FiniteMetricSpace::ensure_row(PointId i) const {
    if (row_cache_.empty()) row_cache_.resize(static_cast<std::size_t>(n_));
    if (!row_cache_[i].empty()) return;
    std::vector<double> row(static_cast<std::size_t>(n_));
    if (kind_ == Kind::graph) {
        graph_->dijkstra(verts_[i], dist_buf_);
        for (int j = 0; j < n_; ++j) row[j] = dist_buf_[verts_[j]];
    } else {
        for (int j = 0; j < n_; ++j) row[j] = compute(i, j);
    }
    row_cache_[i] = std::move(row);
}

const std::vector<double>& FiniteMetricSpace::dist_row(PointId i) const {
    if (i < 0 || i >= n_) fail(errc::bad_input, "point id out of range");
    if (n_ <= cache_cap_) {
        ensure_row(i);
        return row_cache_[i];
    }
    // beyond the cache cap: one shared scratch row (valid until the next call)
    tmp_row_.resize(static_cast<std::size_t>(n_));
    if (kind_ == Kind::graph) {
        graph_->dijkstra(verts_[i], dist_buf_);
        for (int j = 0; j < n_; ++j) tmp_row_[j] = dist_buf_[verts_[j]];
    } else {
        for (int j = 0; j < n_; ++j) tmp_row_[j] = compute(i, j);
    }
    return tmp_row_;
}

double FiniteMetricSpace::dist(PointId i, PointId j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) fail(errc::bad_input, "point id out of range");
    if (i == j) return 0.0;
    if (kind_ == Kind::graph) return dist_row(i)[j];
    return compute(i, j);
}

double FiniteMetricSpace::diameter() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i) {
        const auto& row = dist_row(i);
        for (int j = i + 1; j < n_; ++j) m = std::max(m, row[j]);
    }
    return m;
}

FiniteMetricSpace FiniteMetricSpace::restrict(const Subset& ids) const {
    int m = static_cast<int>(ids.size());
    std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        const auto& row = dist_row(ids[i]);
        for (int j = 0; j < m; ++j) mat[static_cast<std::size_t>(i) * m + j] = row[ids[j]];
    }
    auto Y = from_matrix(m, std::move(mat));
    Y.tol_ = tol_;
    return Y;
}

double set_distance(const FiniteMetricSpace& X, const Subset& a, const Subset& b) {
    if (a.empty() || b.empty()) fail(errc::bad_input, "set_distance: empty operand");
    double best = kInf;
    for (PointId i : a) {
        const auto& row = X.dist_row(i);
        for (PointId j : b) best = std::min(best, row[j]);
    }
    return best;
}

Subset neighborhood(const FiniteMetricSpace& X, const Subset& u, double r) {
    const int n = X.size();
    std::vector<char> in_u(static_cast<std::size_t>(n), 0);
    for (PointId p : u) {
        if (p < 0 || p >= n) fail(errc::bad_input, "neighborhood: point id out of range");
        in_u[p] = 1;
    }
    Subset out;
    if (r > 0.0) {
        // open enlargement: dist(z, U) < r
        for (int z = 0; z < n; ++z) {
            if (in_u[z]) {
                out.push_back(z);
                continue;
            }
            const auto& row = X.dist_row(z);
            for (PointId p : u) {
                if (row[p] < r) {
                    out.push_back(z);
                    break;
                }
            }
        }
    } else if (r == 0.0) {
        out = u;
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    } else {
        // inner shrink: keep points of U farther than |r| from the complement
        const double s = -r;
        for (PointId z : u) {
            const auto& row = X.dist_row(z);
            bool deep = true;
            for (int w = 0; w < n; ++w) {
                if (!in_u[w] && row[w] <= s) {
                    deep = false;
                    break;
                }
            }
            if (deep) out.push_back(z);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double subset_diameter(const FiniteMetricSpace& X, const Subset& u) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& row = X.dist_row(u[i]);
        for (std::size_t j = i + 1; j < u.size(); ++j) m = std::max(m, row[u[j]]);
    }
    return m;
}

}  // namespace cdimlab
