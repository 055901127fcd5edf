#pragma once

#include <vector>

#include "cdimlab/square_complex.hpp"

namespace cdimlab {

// Combinatorial stand-in for the increasing union X_0 c X_1 c ... of scaled
// templates. Cells live on a (mk)^levels grid; a cell is part of the model
// when none of its base-(mk) digit pairs falls into the hole block. The
// level-j region is a (mk)^j square reached by repeatedly stepping into the
// flat block just left and below the hole, so region(j) c region(j+1).
struct HatModel {
    TemplateParams params;
    int levels = 0;
    long long side = 0;

    bool cell_valid(long long x, long long y) const;
    long long extent(int j) const;  // (mk)^j
    long long origin(int j) const;  // lower-left cell of the level-j region
};

struct HatCell {
    long long x = 0;
    long long y = 0;
};

HatModel hat_pi_model(const TemplateParams& params, int levels, const caps& limits = {});

// Minimal j such that some translate of the cell set lands on valid cells
// inside the level-j region. Input cells must be valid model cells.
int find_copy_level(const HatModel& model, const std::vector<HatCell>& cells);

// Graph distance from the middle band of the depth `depth` template to the
// footprint boundary, scaled by (mk)^2 so that the band blocks have the size
// of one whole template copy. Comes out as (mk)*m*l for every depth.
double hat_boundary_gap(const TemplateParams& params, int depth, int g,
                        const caps& limits = {});

}  // namespace cdimlab
