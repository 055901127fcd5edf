#pragma once

#include <functional>
#include <vector>

#include "cdimlab/common.hpp"
#include "cdimlab/metric_space.hpp"

namespace cdimlab {

// Closed intervals surviving some number of middle-interval removal rounds.
struct IntervalLevel {
    std::vector<double> lo;
    std::vector<double> hi;  // parallel to lo, ascending
    int count() const { return static_cast<int>(lo.size()); }
};

// A Cantor-type subset of [0,1] sampled at interval endpoints, plus the whole
// interval hierarchy so cover builders can form cylinder families at any
// level without rerunning the construction.
struct CantorFamily {
    FiniteMetricSpace space;            // 2^(depth+1) endpoints, ascending ids
    std::vector<IntervalLevel> levels;  // levels[r]: after r removal rounds
    std::vector<double> piece_len;      // piece_len[r]: interval length after r rounds
    std::vector<double> gap_len;        // gap_len[r]: middle gap removed in round r+1
    int depth = 0;

    // sample ids inside interval `index` of `levels[round]` (a contiguous range)
    Subset interval_points(int round, int index) const;
    // one member per interval of the level, usable directly as covering members
    std::vector<Subset> cylinder_members(int round) const;
};

// General middle-interval construction. removed_fraction(k) is the fraction
// of each surviving interval removed at round k (1-based); the first round
// must remove exactly 1/3 and later fractions must not increase.
CantorFamily cantor_family(int depth, const std::function<double(int)>& removed_fraction,
                           const caps& cap = {});

// removed fraction 1/3 at every round: the middle-thirds set
CantorFamily cantor_ternary(int depth, const caps& cap = {});

// removed fraction 1/(k+2) at round k: gaps thin out relative to the pieces,
// so single-color covers lose Lebesgue clearance as the scale refines
CantorFamily cantor_slow(int depth, const caps& cap = {});

// cells+1 evenly spaced points 0, 1/cells, ..., 1
FiniteMetricSpace interval_grid(int cells);

// n points on the unit circle with chordal (Euclidean) distances
FiniteMetricSpace circle_sample(int n);

// n-fold sup-metric product of {0} u {1/j : 1 <= j <= m_max}, axis values
// ascending, points in lexicographic axis order
FiniteMetricSpace reciprocal_product(int n, int m_max, const caps& cap = {});

// balanced rooted tree with unit edges: ids level by level, root 0; distances
// realized as an explicit matrix
FiniteMetricSpace balanced_tree(int branching, int tree_depth, const caps& cap = {});

}  // namespace cdimlab
