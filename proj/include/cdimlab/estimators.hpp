#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cdimlab/covering.hpp"

namespace cdimlab {

struct CapacityProfileRow {
    double tau = 0.0;
    int colors = 0;
    double best_delta = 0.0;  // Lebesgue / tau of the best covering found
    std::string method;       // construction that achieved it, "none" if none
};

// Caps the reported delta when a covering has infinite Lebesgue number
// (single member equal to the whole space).
inline constexpr double kProfileDeltaCap = 1e9;

struct CandidateCover {
    std::string method;
    Covering cover;
};

// Extra per-scale cover constructions (cylinder families and the like) that
// the profile should consider alongside the generic ball covers.
using CoverSource = std::function<std::vector<CandidateCover>(double tau)>;

// For each scale tau and each color budget c <= max_colors, the best
// Lebesgue/tau ratio among generated coverings with mesh <= tau using at most
// c colors. Sources: ball covers around nets at several tuned radii, the
// caller's extra sources, and (for tiny spaces) a bounded exhaustive search
// over ball families. Rows are ordered tau descending, colors ascending;
// best_delta is a lower bound on what the space admits, not an optimum.
std::vector<CapacityProfileRow> capacity_profile(
    const FiniteMetricSpace& X, std::vector<double> scales, int max_colors,
    const std::vector<CoverSource>& extra_sources = {});

struct BoxCountRow {
    double epsilon = 0.0;
    long long count = 0;
};

struct BoxCountReport {
    std::vector<BoxCountRow> rows;  // epsilon descending
    double fitted_slope = 0.0;      // log N against log(1/epsilon)
    double fit_residual = 0.0;      // rms residual of the fit
};

// Greedy net-cover counts N(eps) per scale and the least-squares dimension
// estimate. Needs >= 2 positive scales spanning at least one decade; with six
// or more scales the two extremes are excluded from the fit (kept in rows).
BoxCountReport box_counting(const FiniteMetricSpace& X, std::vector<double> scales);

// Max over centers of the greedy number of r-balls needed to cover that
// center's 2r-ball.
int doubling_constant(const FiniteMetricSpace& X, double r);

struct DistancePair {
    int a = 0, b = 0;      // ids, for reporting only
    double source = 0.0;   // distance in the source space
    double image = 0.0;    // distance between the image points
};

struct QuasiHomothetyReport {
    double R = 0.0;
    double lambda = 1.0;  // least lambda with R*d/lambda <= d' <= lambda*R*d
    DistancePair worst;
};

QuasiHomothetyReport quasi_homothety_coefficient(const std::vector<DistancePair>& pairs,
                                                 double R);

}  // namespace cdimlab
