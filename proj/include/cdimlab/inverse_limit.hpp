#pragma once

#include <vector>

#include "cdimlab/square_complex.hpp"

namespace cdimlab {

// Tower of templates P^0 .. P^depth over one parameter pair, all on the unit
// footprint with the same grid resolution. Level i+1 refines level i by one
// round of block substitution, so the two are related by a bonding map.
struct TemplateTower {
    TemplateParams params;
    int g = 8;
    std::vector<SquareComplex> levels;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    const SquareComplex& level(int i) const;
};

TemplateTower build_tower(const TemplateParams& params, int depth, int g,
                          bool with_graph = true, const caps& limits = {});

// Projection of level i+1 onto level i: the identity away from the deepest
// bands, which collapse onto their parent hole squares. 1-Lipschitz.
ComplexPoint bonding_map(const TemplateTower& tw, int i, const ComplexPoint& p);

// Distances of one pair traced down the tower: entry i is the graph distance
// at level i after composing bonding maps. Nondecreasing in i up to grid
// tolerance; the inverse-limit distance is approached from below.
std::vector<double> limit_distance(const TemplateTower& tw, const ComplexPoint& p,
                                   const ComplexPoint& q);

// Batched variant sharing one Dijkstra per level for a common source.
// Row i holds the level-i distances from src to every target.
std::vector<std::vector<double>> limit_distance_batch(const TemplateTower& tw,
                                                      const ComplexPoint& src,
                                                      const std::vector<ComplexPoint>& targets);

// The homothety of coefficient 1/(mk) onto block `letter` of the next level.
ComplexPoint selfsimilarity_map(const TemplateTower& tw, int letter, int i,
                                const ComplexPoint& p);

// Open-set condition audit for the block maps of level i -> i+1: block
// footprints tile the next level and band addresses split by first letter
// into one copy of the level-i band family per block.
bool osc_audit(const TemplateTower& tw, int i);

}  // namespace cdimlab
