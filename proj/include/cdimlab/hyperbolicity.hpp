#pragma once

#include <array>

#include "cdimlab/common.hpp"
#include "cdimlab/metric_space.hpp"

namespace cdimlab {

struct HyperbolicityReport {
    double delta = 0.0;
    std::array<PointId, 4> witness{0, 0, 0, 0};  // (o, x, y, z) with the worst slack
};

// (x|y)_o = (|xo| + |yo| - |xy|) / 2
double gromov_product(const FiniteMetricSpace& X, PointId o, PointId x, PointId y);

// Least delta >= 0 such that (x|y)_o >= min((x|z)_o, (z|y)_o) - delta for all
// ordered 4-tuples. Exhaustive scan, O(n^4); refuses spaces over the cap.
HyperbolicityReport delta_hyperbolicity(const FiniteMetricSpace& X, const caps& cap = {});

}  // namespace cdimlab
