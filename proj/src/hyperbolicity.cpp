#include "cdimlab/hyperbolicity.hpp"

#include <algorithm>
#include <vector>

namespace cdimlab {

double gromov_product(const FiniteMetricSpace& X, PointId o, PointId x, PointId y) {
    return (X.dist(x, o) + X.dist(y, o) - X.dist(x, y)) / 2.0;
}

HyperbolicityReport delta_hyperbolicity(const FiniteMetricSpace& X, const caps& cap) {
    const int n = X.size();
    if (n < 1) fail(errc::bad_input, "delta_hyperbolicity needs a nonempty space");
    if (n > cap.hyperbolicity_scan)
        fail(errc::cap_exceeded, "delta scan is O(n^4); " + std::to_string(n) +
                                     " points exceed the cap of " +
                                     std::to_string(cap.hyperbolicity_scan));

    HyperbolicityReport rep;
    if (n <= 3) return rep;  // inequality is degenerate below four points

    std::vector<double> G(static_cast<std::size_t>(n) * n);
    std::vector<double> row_o;
    for (PointId o = 0; o < n; ++o) {
        // dist_row may hand back one shared scratch buffer, so the base row
        // has to be copied before the per-x rows overwrite it
        row_o = X.dist_row(o);
        for (PointId x = 0; x < n; ++x) {
            const auto& row_x = X.dist_row(x);
            const double xo = row_o[x];
            for (PointId y = 0; y < n; ++y)
                G[static_cast<std::size_t>(x) * n + y] = (xo + row_o[y] - row_x[y]) / 2.0;
        }
        for (PointId x = 0; x < n; ++x) {
            const double* gx = &G[static_cast<std::size_t>(x) * n];
            for (PointId y = 0; y < n; ++y) {
                const double* gy = &G[static_cast<std::size_t>(y) * n];
                const double xy = gx[y];
                for (PointId z = 0; z < n; ++z) {
                    double slack = std::min(gx[z], gy[z]) - xy;
                    if (slack > rep.delta) {
                        rep.delta = slack;
                        rep.witness = {o, x, y, z};
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace cdimlab
