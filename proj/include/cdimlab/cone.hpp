#pragma once

#include <vector>

#include "cdimlab/covering.hpp"
#include "cdimlab/estimators.hpp"

namespace cdimlab {

// Hyperbolic cone over a bounded base: points (z, t) with radius t >= 0 and
// all (z, 0) glued into a single vertex. Distances come from comparison
// triangles in the hyperbolic plane with legs t, t' and angle mu * |zz'|.
struct ConeSpace {
    FiniteMetricSpace base;
    double mu = 0.0;  // pi / diam(base); 0 for a one-point base
};

ConeSpace make_cone(FiniteMetricSpace base);

struct ConePoint {
    PointId z = 0;   // base index; irrelevant at t == 0, the vertex
    double t = 0.0;  // radius
};

// Hyperbolic law of cosines, with the flat branches taken exactly:
// zero angle gives |t - t'| and angle pi gives t + t'.
double cone_distance(const ConeSpace& C, const ConePoint& x, const ConePoint& y);

// Finite grid over the cone: the vertex at index 0 followed by radii
// j * t_step, j = 1..floor(t_max / t_step), for every base point in order.
// `space` realizes the cone metric on those points as a matrix and `annulus`
// indexes the shell 1 <= |xo| <= 2.
struct ConeSample {
    ConeSpace cone;
    std::vector<ConePoint> points;
    FiniteMetricSpace space;
    Subset annulus;

    int radius_steps = 0;  // grid radii per base point
    double t_step = 0.0;

    // index of (z, k * t) for sample index p, or -1 when the scaled radius
    // leaves the grid
    PointId scale_up(PointId p, int k) const;
};

ConeSample sample_cone(FiniteMetricSpace base, double t_max, double t_step,
                       const caps& limits = {});

// Radial contraction F_k(z, t) = (z, t / k) applied member-wise through its
// grid preimage, then restricted to the annulus shell.
struct AnnulusContraction {
    Covering contracted;  // preimage members on the radius-shrunk carrier
    Covering restricted;  // contracted clipped to the annulus, empties dropped
    CoveringStats stats;  // stats of `restricted` within the sample space
};

AnnulusContraction annulus_contract(const ConeSample& S, const Covering& U, int k);

// Base-change estimate for Gromov products: when both products (x1|g)_o and
// (x2|g)_o reach |og| - sigma, rebasing at g costs at most 2 sigma:
//   (x1|x2)_o <= (x1|x2)_g + |og| <= (x1|x2)_o + 2 sigma.
struct ProductCompareReport {
    bool hypothesis_met = false;
    bool pass = false;
    double slack_lower = 0.0;  // (x1|x2)_g + |og| - (x1|x2)_o
    double slack_upper = 0.0;  // (x1|x2)_o + 2 sigma - (x1|x2)_g - |og|
};

ProductCompareReport check_product_compare(const FiniteMetricSpace& X, PointId o, PointId g,
                                           PointId x1, PointId x2, double sigma);

// Boundary of the depth-D b-ary rooted tree under the visual metric
// a^{-(xi|xi')}, the Gromov product being the common prefix length. The
// constants c and rho feed the guaranteed shift coefficient c^2 * a^rho
// (trees are 0-hyperbolic, so the 4 delta term drops out).
struct VisualBoundaryModel {
    int branching = 2;
    int depth = 1;
    double a = 2.0;
    double c = 1.0;
    double rho = 0.0;

    long long leaf_count() const;
    double lambda_bound() const;  // c^2 * a^rho
    double scale_floor() const;   // min(1, diam / lambda_bound), diam = 1
};

VisualBoundaryModel make_boundary_model(int branching, int depth, double a, double c,
                                        double rho);

// Visual distance between leaves, indices in [0, b^D) with the first letter
// most significant.
double visual_distance(const VisualBoundaryModel& M, long long leaf, long long other);

// Every leaf as a matrix-backed space; leaf count is checked against
// limits.space_points.
FiniteMetricSpace boundary_space(const VisualBoundaryModel& M, const caps& limits = {});

// Shift map along the ray toward A: strips the letters matching the requested
// coefficient (an exact a^j homothety on any cylinder around A) and measures
// the induced map against R. Requires diam A <= scale_floor / R.
QuasiHomothetyReport tree_boundary_selfsimilarity(const VisualBoundaryModel& M,
                                                  const std::vector<long long>& A, double R);

}  // namespace cdimlab
