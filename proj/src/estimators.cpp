#include "cdimlab/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "cdimlab/cover_ops.hpp"

namespace cdimlab {

namespace {

// delta achieved by a candidate at scale tau under a color budget, or a
// negative value when the candidate does not qualify
double qualify(const FiniteMetricSpace& X, const Covering& C, double tau, int color_budget) {
    if (C.members.empty()) return -1.0;
    if (C.colored() && C.color_count() > color_budget) return -1.0;
    if (!C.colored() && static_cast<int>(C.members.size()) > color_budget) {
        // uncolored candidates qualify only if a greedy disjointness coloring
        // fits the budget
        std::vector<int> color(C.members.size(), -1);
        int used_max = 0;
        for (std::size_t i = 0; i < C.members.size(); ++i) {
            std::vector<char> used(C.members.size(), 0);
            for (std::size_t j = 0; j < i; ++j) {
                // conflict when the members share a point
                const Subset &a = C.members[i], &b = C.members[j];
                std::size_t x = 0, y = 0;
                bool meet = false;
                while (x < a.size() && y < b.size()) {
                    if (a[x] == b[y]) {
                        meet = true;
                        break;
                    }
                    (a[x] < b[y]) ? ++x : ++y;
                }
                if (meet) used[static_cast<std::size_t>(color[j])] = 1;
            }
            int c = 0;
            while (static_cast<std::size_t>(c) < used.size() && used[static_cast<std::size_t>(c)])
                ++c;
            color[i] = c;
            used_max = std::max(used_max, c + 1);
        }
        if (used_max > color_budget) return -1.0;
    }
    CoveringStats st = covering_stats(X, C);
    if (st.mesh > tau * (1.0 + kNumSlack)) return -1.0;
    if (st.lebesgue_infinite) return kProfileDeltaCap;
    return st.lebesgue / tau;
}

void consider(const FiniteMetricSpace& X, const CandidateCover& cand, double tau,
              std::vector<CapacityProfileRow>& rows) {
    for (CapacityProfileRow& row : rows) {
        double d = qualify(X, cand.cover, tau, row.colors);
        if (d > row.best_delta) {
            row.best_delta = d;
            row.method = cand.method;
        }
    }
}

std::vector<CandidateCover> exhaustive_ball_covers(const FiniteMetricSpace& X, double tau) {
    // bounded search: ball families with up to five centers at a few radii,
    // only worth running on very small spaces
    std::vector<CandidateCover> out;
    const int n = X.size();
    if (n > 24) return out;
    const double radii[] = {tau / 2.0, tau / 3.0};
    const int max_centers = std::min(n, 5);

    std::vector<int> pick;
    std::function<void(int, double)> rec = [&](int start, double radius) {
        if (!pick.empty()) {
            Covering C;
            C.carrier = full_carrier(X);
            for (int c : pick) {
                Subset ball;
                const auto& row = X.dist_row(c);
                for (PointId z = 0; z < n; ++z)
                    if (row[z] <= radius) ball.push_back(z);
                C.members.push_back(std::move(ball));
            }
            if (!first_uncovered(X, C)) {
                // skip families with a redundant member; the subfamily shows
                // up elsewhere in the enumeration anyway
                std::vector<int> depth(static_cast<std::size_t>(n), 0);
                for (const Subset& u : C.members)
                    for (PointId p : u) ++depth[static_cast<std::size_t>(p)];
                bool redundant = false;
                for (const Subset& u : C.members) {
                    bool has_private = false;
                    for (PointId p : u)
                        if (depth[static_cast<std::size_t>(p)] == 1) {
                            has_private = true;
                            break;
                        }
                    if (!has_private) {
                        redundant = true;
                        break;
                    }
                }
                if (!redundant) out.push_back({"exhaustive-balls", std::move(C)});
            }
        }
        if (static_cast<int>(pick.size()) == max_centers) return;
        for (int c = start; c < n; ++c) {
            pick.push_back(c);
            rec(c + 1, radius);
            pick.pop_back();
        }
    };
    for (double radius : radii) rec(0, radius);
    return out;
}

}  // namespace

std::vector<CapacityProfileRow> capacity_profile(const FiniteMetricSpace& X,
                                                 std::vector<double> scales, int max_colors,
                                                 const std::vector<CoverSource>& extra_sources) {
    if (max_colors < 1) fail(errc::bad_input, "need at least one color");
    for (double t : scales)
        if (!(t > 0.0)) fail(errc::bad_input, "profile scales must be positive");
    std::sort(scales.begin(), scales.end(), std::greater<>());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

    std::vector<CapacityProfileRow> all;
    for (double tau : scales) {
        std::vector<CapacityProfileRow> rows;
        for (int c = 1; c <= max_colors; ++c) rows.push_back({tau, c, 0.0, "none"});

        for (double div : {4.0, 5.0, 6.0, 8.0}) {
            CandidateCover cand{"net-balls", doubling_colored_cover(X, tau / div)};
            consider(X, cand, tau, rows);
        }
        for (const CoverSource& src : extra_sources)
            for (CandidateCover& cand : src(tau)) consider(X, cand, tau, rows);
        for (CandidateCover& cand : exhaustive_ball_covers(X, tau)) consider(X, cand, tau, rows);

        all.insert(all.end(), rows.begin(), rows.end());
    }
    return all;
}

BoxCountReport box_counting(const FiniteMetricSpace& X, std::vector<double> scales) {
    if (scales.size() < 2) fail(errc::bad_input, "need at least two scales");
    for (double e : scales)
        if (!(e > 0.0)) fail(errc::bad_input, "scales must be positive");
    std::sort(scales.begin(), scales.end(), std::greater<>());
    if (scales.front() < 10.0 * scales.back())
        fail(errc::bad_input, "scales are degenerate: need at least one decade of spread");

    const int n = X.size();
    BoxCountReport rep;

    // reverse map for the graph fast path
    std::vector<std::int32_t> sample_of;
    if (X.is_graph()) {
        sample_of.assign(static_cast<std::size_t>(X.graph()->vertex_count()), -1);
        const auto& verts = X.graph_vertices();
        for (int i = 0; i < n; ++i) sample_of[static_cast<std::size_t>(verts[i])] = i;
    }

    std::vector<char> covered(static_cast<std::size_t>(n));
    std::vector<std::pair<std::int32_t, double>> ball;
    for (double eps : scales) {
        std::fill(covered.begin(), covered.end(), 0);
        long long count = 0;
        for (int i = 0; i < n; ++i) {
            if (covered[static_cast<std::size_t>(i)]) continue;
            ++count;
            if (X.is_graph()) {
                X.graph()->dijkstra_ball(X.graph_vertices()[i], eps, ball);
                for (const auto& [v, d] : ball) {
                    std::int32_t s = sample_of[static_cast<std::size_t>(v)];
                    if (s >= 0) covered[static_cast<std::size_t>(s)] = 1;
                }
                covered[static_cast<std::size_t>(i)] = 1;  // radius 0 fallback
            } else {
                const auto& row = X.dist_row(i);
                for (int j = 0; j < n; ++j)
                    if (row[j] <= eps) covered[static_cast<std::size_t>(j)] = 1;
            }
        }
        rep.rows.push_back({eps, count});
    }

    // least-squares slope of log N against log(1/eps); with six scales or
    // more the two extremes are boundary-dominated and excluded
    std::size_t lo = 0, hi = rep.rows.size();
    if (rep.rows.size() >= 6) {
        ++lo;
        --hi;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(hi - lo);
    for (std::size_t t = lo; t < hi; ++t) {
        double x = std::log(1.0 / rep.rows[t].epsilon);
        double y = std::log(static_cast<double>(rep.rows[t].count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double var = sxx - sx * sx / cnt;
    rep.fitted_slope = var > 0.0 ? (sxy - sx * sy / cnt) / var : 0.0;
    double ss = 0.0;
    for (std::size_t t = lo; t < hi; ++t) {
        double x = std::log(1.0 / rep.rows[t].epsilon);
        double y = std::log(static_cast<double>(rep.rows[t].count));
        double pred = sy / cnt + rep.fitted_slope * (x - sx / cnt);
        ss += (y - pred) * (y - pred);
    }
    rep.fit_residual = std::sqrt(ss / cnt);
    return rep;
}

int doubling_constant(const FiniteMetricSpace& X, double r) {
    if (!(r > 0.0)) fail(errc::bad_input, "radius must be positive");
    const int n = X.size();
    int worst = 0;
    std::vector<PointId> big;
    std::vector<char> covered;
    for (PointId c = 0; c < n; ++c) {
        big.clear();
        {
            const auto& row = X.dist_row(c);
            for (PointId z = 0; z < n; ++z)
                if (row[z] <= 2.0 * r) big.push_back(z);
        }
        covered.assign(big.size(), 0);
        int count = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            if (covered[i]) continue;
            ++count;
            const auto& row = X.dist_row(big[i]);
            for (std::size_t j = 0; j < big.size(); ++j)
                if (row[big[j]] <= r) covered[j] = 1;
        }
        worst = std::max(worst, count);
    }
    return worst;
}

QuasiHomothetyReport quasi_homothety_coefficient(const std::vector<DistancePair>& pairs,
                                                 double R) {
    if (!(R > 0.0)) fail(errc::bad_input, "coefficient R must be positive");
    if (pairs.empty()) fail(errc::bad_input, "no distance pairs supplied");
    QuasiHomothetyReport rep;
    rep.R = R;
    rep.worst = pairs.front();
    for (const DistancePair& p : pairs) {
        if (p.source == 0.0) {
            if (p.image > 0.0)
                fail(errc::bad_input, "not injective on sample: pair (" + std::to_string(p.a) +
                                          ", " + std::to_string(p.b) +
                                          ") has zero source distance");
            fail(errc::bad_input, "degenerate pair with zero source distance");
        }
        double lam = std::max(p.image / (R * p.source), R * p.source / p.image);
        if (lam > rep.lambda) {
            rep.lambda = lam;
            rep.worst = p;
        }
    }
    return rep;
}

}  // namespace cdimlab
