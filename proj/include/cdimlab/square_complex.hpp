#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "cdimlab/common.hpp"
#include "cdimlab/metric_graph.hpp"

namespace cdimlab {

// Parameters of the recursive template family. Each template is assembled
// from s() unit blocks arranged as a (km x km) grid whose middle (m x m)
// block is replaced by an m-band of 4m*m further blocks.
struct TemplateParams {
    int m = 2;
    int k = 3;

    int l() const { return (k - 1) / 2; }
    int km() const { return k * m; }
    long long s() const {
        const long long q = static_cast<long long>(km());
        return q * q + 3LL * m * m;
    }
    // upper bound for the intrinsic diameter at every depth
    double diam_bound() const {
        return 2.0 * m * (l() + 1) / (km() - 1.0) + 2.0;
    }
};

TemplateParams make_template_params(int m, int k);

// square hole cut out of a panel; a band is glued along its rim
struct Hole {
    int x = 0, y = 0;  // lower-left corner in panel cells
    int size = 0;      // side length in panel cells
    int band = -1;
};

// one maximal flat sheet: a w x h rectangle of cells minus its holes
struct Panel {
    int w = 0, h = 0;
    int band = -1;  // owning band, -1 for the top sheet
    int face = 0;   // position within the owning band
    std::vector<Hole> holes;
};

// m rectangular sheets glued cyclically along a common (singular) side;
// inside a template the outer rim is also glued around a hole of the parent
struct Band {
    int generation = 0;  // 1 for the band attached to the top sheet
    int parent_panel = -1;
    int parent_hole = -1;
    int first_face = 0;  // m consecutive panel ids
    std::vector<int> address;  // block letters from the top, length generation-1
};

// location inside one panel chart, in physical length units
struct ComplexPoint {
    int panel = 0;
    double x = 0.0;
    double y = 0.0;
};

struct DiameterBounds {
    double lower = 0.0;  // distance realized by a sweep pair
    double upper = 0.0;  // certificate via the boundary ring
};

// A 2-dimensional square complex made of axis-aligned rectangular sheets
// with square holes and cyclically glued bands. Distances come from an
// 8-neighbor grid graph with g subdivisions per cell; graph lengths
// overestimate the intrinsic metric by at most kGridStretch.
class SquareComplex {
  public:
    int m() const { return m_; }
    int k() const { return k_; }
    int depth() const { return depth_; }
    int g() const { return g_; }
    double cell_x() const { return cell_x_; }
    double cell_y() const { return cell_y_; }
    bool has_graph() const { return graph_ != nullptr; }

    const std::vector<Panel>& panels() const { return panels_; }
    const std::vector<Band>& bands() const { return bands_; }
    long long cell_count() const;
    long long band_count(int generation) const;
    int band_by_address(const std::vector<int>& address) const;  // -1 if absent

    std::shared_ptr<const MetricGraph> graph() const { return graph_; }
    std::int64_t vertex_count() const { return vertex_count_; }
    // snaps to the nearest grid vertex; fails inside a hole
    std::int32_t vertex_at(const ComplexPoint& p) const;
    // raw grid lookup in subdivision units, -1 inside a hole
    std::int32_t vertex_lookup(int panel, int vx, int vy) const;
    ComplexPoint cell_center(int panel, int cx, int cy) const;

    double distance(const ComplexPoint& a, const ComplexPoint& b) const;

    // footprint boundary of the top sheet (templates) or the free rim of the
    // band (standalone bands), as an ordered vertex cycle
    std::vector<std::int32_t> boundary_cycle() const;
    double boundary_length() const;
    // the y = 0 side of a band, closed up by the cyclic gluing
    std::vector<std::int32_t> singular_cycle(int band) const;

    // max over vertices of the graph distance to the boundary cycle
    double max_boundary_clearance() const;
    DiameterBounds diameter_bounds() const;

    // every cell-corner vertex, for sampling the complex as a metric space
    std::vector<std::int32_t> corner_vertices() const;
    ComplexPoint random_point(rng& gen) const;

  private:
    friend SquareComplex build_band(int m, double a, double b, int g, const caps& limits);
    friend SquareComplex build_template(const TemplateParams& params, int depth, int g,
                                        bool with_graph, const caps& limits);

    void build_graph(const caps& limits);
    std::int64_t grid_index(int panel, int vx, int vy) const;

    int m_ = 0, k_ = 0, depth_ = 0, g_ = 0;
    double cell_x_ = 1.0, cell_y_ = 1.0;
    std::vector<Panel> panels_;
    std::vector<Band> bands_;
    std::map<std::vector<int>, int> band_index_;

    std::shared_ptr<const MetricGraph> graph_;
    std::int64_t vertex_count_ = 0;
    std::vector<std::vector<std::int32_t>> vmap_;  // per panel, -1 inside holes
    std::vector<std::int64_t> vert0_;              // provisional id base per panel
};

// m rectangles a wide (along the cyclic direction) and b tall glued into a
// band; m = 2 gives the Moebius band
SquareComplex build_band(int m, double a, double b, int g, const caps& limits = {});

// the depth-i template; depth 0 is the plain unit square
SquareComplex build_template(const TemplateParams& params, int depth, int g,
                             bool with_graph = true, const caps& limits = {});

// Collapse of the band built as build_band(m, 4a/m, b) onto the square
// [0,a]^2: the rim maps around the square boundary preserving arc length,
// the singular circle goes to the center, radial segments map affinely.
// Needs b >= a*sqrt(2)/2 to be 1-Lipschitz.
std::pair<double, double> band_collapse_map(int m, double a, double b,
                                            const ComplexPoint& p);

// Block letters enumerate the s() unit blocks of the depth-1 structure:
// row-major over the km x km grid skipping the hole, then the band blocks
// in (face, row, column) order. Words of letters address nested subblocks.
using BlockAddress = std::vector<int>;

struct BlockRef {
    bool in_band = false;
    int gx = 0, gy = 0;        // grid block when !in_band
    int face = 0, bx = 0, by = 0;  // band block otherwise
};

BlockRef letter_ref(const TemplateParams& params, int letter);
int ref_letter(const TemplateParams& params, const BlockRef& ref);

}  // namespace cdimlab
