#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdimlab/metric_space.hpp"

namespace cdimlab {

// A finite family of member subsets required to cover `carrier`. Members may
// contain points outside the carrier; complements for Lebesgue purposes are
// always taken in the whole ambient space X. An empty `colors` vector means
// the covering is uncolored; otherwise colors[i] is the color of member i and
// same-colored members are supposed to be disjoint (validated on demand).
struct Covering {
    Subset carrier;
    std::vector<Subset> members;
    std::vector<int> colors;

    bool colored() const { return !colors.empty(); }
    int color_count() const;
};

struct CoveringStats {
    double mesh = 0.0;        // max member diameter
    int multiplicity = 0;     // max number of members through one point of X
    double lebesgue = 0.0;    // min over carrier of max over members of dist(z, X \ U)
    bool lebesgue_infinite = false;  // set when some member equals all of X
};

// Validates coverage of the carrier (error names the first uncovered point)
// and disjointness of same-colored members, then computes the stats.
CoveringStats covering_stats(const FiniteMetricSpace& X, const Covering& C);

// Member-wise inner shrink B_{-s}; drops members that become empty and fails
// with the first exposed carrier point when the shrink breaks coverage.
Covering shrink_cover(const FiniteMetricSpace& X, const Covering& C, double s);

// Convenience: does the union of members contain every carrier point?
// Returns the first uncovered point if any.
std::optional<PointId> first_uncovered(const FiniteMetricSpace& X, const Covering& C);

Subset full_carrier(const FiniteMetricSpace& X);

}  // namespace cdimlab
