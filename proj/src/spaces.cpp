#include "cdimlab/spaces.hpp"

#include <cmath>
#include <numbers>

namespace cdimlab {

Subset CantorFamily::interval_points(int round, int index) const {
    if (round < 0 || round > depth) fail(errc::bad_input, "interval level out of range");
    if (index < 0 || index >= levels[static_cast<std::size_t>(round)].count())
        fail(errc::bad_input, "interval index out of range");
    // interval `index` at level `round` spans 2^(depth-round) final intervals,
    // each contributing its two endpoints, all contiguous in id order
    const int span = 1 << (depth - round);
    Subset out;
    out.reserve(static_cast<std::size_t>(2 * span));
    for (int p = 2 * index * span; p < 2 * (index + 1) * span; ++p) out.push_back(p);
    return out;
}

std::vector<Subset> CantorFamily::cylinder_members(int round) const {
    std::vector<Subset> fam;
    const int cnt = levels[static_cast<std::size_t>(round)].count();
    fam.reserve(static_cast<std::size_t>(cnt));
    for (int i = 0; i < cnt; ++i) fam.push_back(interval_points(round, i));
    return fam;
}

CantorFamily cantor_family(int depth, const std::function<double(int)>& removed_fraction,
                           const caps& cap) {
    if (depth < 1) fail(errc::bad_input, "cantor construction needs depth >= 1");
    if (depth > cap.cantor_depth)
        fail(errc::cap_exceeded,
             "cantor depth " + std::to_string(depth) + " exceeds cap " +
                 std::to_string(cap.cantor_depth));
    if (depth < 62 && (2LL << depth) > cap.space_points)
        fail(errc::cap_exceeded, "cantor set would have " + std::to_string(2LL << depth) +
                                     " endpoints, over the cap");

    CantorFamily F;
    F.depth = depth;
    F.levels.resize(static_cast<std::size_t>(depth) + 1);
    F.levels[0].lo = {0.0};
    F.levels[0].hi = {1.0};
    F.piece_len = {1.0};

    double prev_frac = kInf;
    for (int k = 1; k <= depth; ++k) {
        const double eps = removed_fraction(k);
        if (!(eps > 0.0 && eps < 1.0))
            fail(errc::bad_input, "removed fraction must lie strictly between 0 and 1");
        if (k == 1 && std::fabs(eps - 1.0 / 3.0) > 1e-15)
            fail(errc::bad_input, "first removed fraction must be 1/3");
        if (eps > prev_frac)
            fail(errc::bad_input,
                 "removed fractions must not increase (round " + std::to_string(k) + ")");
        prev_frac = eps;

        const double piece = F.piece_len.back();
        const double gap = eps * piece;
        const double child = (piece - gap) / 2.0;
        F.gap_len.push_back(gap);
        F.piece_len.push_back(child);

        const IntervalLevel& up = F.levels[static_cast<std::size_t>(k) - 1];
        IntervalLevel& lvl = F.levels[static_cast<std::size_t>(k)];
        lvl.lo.reserve(up.lo.size() * 2);
        lvl.hi.reserve(up.lo.size() * 2);
        for (std::size_t i = 0; i < up.lo.size(); ++i) {
            lvl.lo.push_back(up.lo[i]);
            lvl.hi.push_back(up.lo[i] + child);
            lvl.lo.push_back(up.hi[i] - child);
            lvl.hi.push_back(up.hi[i]);
        }
    }

    const IntervalLevel& leaves = F.levels[static_cast<std::size_t>(depth)];
    std::vector<std::vector<double>> pts;
    pts.reserve(leaves.lo.size() * 2);
    for (std::size_t i = 0; i < leaves.lo.size(); ++i) {
        pts.push_back({leaves.lo[i]});
        pts.push_back({leaves.hi[i]});
    }
    F.space = FiniteMetricSpace::from_coords(std::move(pts), FiniteMetricSpace::Metric::euclidean);
    return F;
}

CantorFamily cantor_ternary(int depth, const caps& cap) {
    return cantor_family(depth, [](int) { return 1.0 / 3.0; }, cap);
}

CantorFamily cantor_slow(int depth, const caps& cap) {
    return cantor_family(depth, [](int k) { return 1.0 / (k + 2); }, cap);
}

FiniteMetricSpace interval_grid(int cells) {
    if (cells < 1) fail(errc::bad_input, "interval grid needs at least one cell");
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) pts.push_back({static_cast<double>(i) / cells});
    return FiniteMetricSpace::from_coords(std::move(pts), FiniteMetricSpace::Metric::euclidean);
}

FiniteMetricSpace circle_sample(int n) {
    if (n < 1) fail(errc::bad_input, "circle sample needs at least one point");
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * std::numbers::pi * i / n;
        pts.push_back({std::cos(th), std::sin(th)});
    }
    return FiniteMetricSpace::from_coords(std::move(pts), FiniteMetricSpace::Metric::euclidean);
}

FiniteMetricSpace reciprocal_product(int n, int m_max, const caps& cap) {
    if (n < 1 || m_max < 2) fail(errc::bad_input, "reciprocal product needs n >= 1, m >= 2");
    std::vector<double> axis;
    axis.push_back(0.0);
    for (int j = m_max; j >= 1; --j) axis.push_back(1.0 / j);

    double total = 1.0;
    for (int t = 0; t < n; ++t) total *= static_cast<double>(axis.size());
    if (total > static_cast<double>(cap.space_points))
        fail(errc::cap_exceeded, "reciprocal product would have " + std::to_string(total) +
                                     " points, over the cap");

    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(total));
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::vector<double> p(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) p[static_cast<std::size_t>(t)] = axis[idx[t]];
        pts.push_back(std::move(p));
        int t = n - 1;
        while (t >= 0 && ++idx[t] == static_cast<int>(axis.size())) idx[t--] = 0;
        if (t < 0) break;
    }
    return FiniteMetricSpace::from_coords(std::move(pts), FiniteMetricSpace::Metric::sup);
}

FiniteMetricSpace balanced_tree(int branching, int tree_depth, const caps& cap) {
    if (branching < 1 || tree_depth < 0) fail(errc::bad_input, "bad tree shape");
    long long count = 0, layer = 1;
    for (int d = 0; d <= tree_depth; ++d) {
        count += layer;
        layer *= branching;
        if (count > cap.space_points) fail(errc::cap_exceeded, "tree too large for the cap");
    }
    const int n = static_cast<int>(count);

    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> depth_of(static_cast<std::size_t>(n), 0);
    int next = 1;
    for (int v = 0; v < n && next < n; ++v) {
        for (int c = 0; c < branching && next < n; ++c) {
            parent[static_cast<std::size_t>(next)] = v;
            depth_of[static_cast<std::size_t>(next)] = depth_of[static_cast<std::size_t>(v)] + 1;
            ++next;
        }
    }

    // distance via lowest common ancestor, filled row by row
    std::vector<double> mat(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            int a = i, b = j;
            while (depth_of[a] > depth_of[b]) a = parent[a];
            while (depth_of[b] > depth_of[a]) b = parent[b];
            while (a != b) {
                a = parent[a];
                b = parent[b];
            }
            double d = static_cast<double>(depth_of[i] + depth_of[j] - 2 * depth_of[a]);
            mat[static_cast<std::size_t>(i) * n + j] = d;
            mat[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return FiniteMetricSpace::from_matrix(n, std::move(mat));
}

}  // namespace cdimlab
