#include "cdimlab/block_model.hpp"

#include <algorithm>

namespace cdimlab {

bool HatModel::cell_valid(long long x, long long y) const {
    if (x < 0 || y < 0 || x >= side || y >= side) return false;
    const int km = params.km(), ml = params.m * params.l();
    long long xs = x, ys = y;
    for (int t = 0; t < levels; ++t) {
        const int dx = static_cast<int>(xs % km), dy = static_cast<int>(ys % km);
        if (dx >= ml && dx < ml + params.m && dy >= ml && dy < ml + params.m) return false;
        xs /= km;
        ys /= km;
    }
    return true;
}

long long HatModel::extent(int j) const {
    if (j < 0 || j > levels) fail(errc::bad_input, "model level out of range");
    long long v = 1;
    for (int t = 0; t < j; ++t) v *= params.km();
    return v;
}

long long HatModel::origin(int j) const {
    if (j < 0 || j > levels) fail(errc::bad_input, "model level out of range");
    const long long step = params.m * params.l() - 1;
    long long off = 0, scale = extent(j);
    for (int t = j; t < levels; ++t) {
        off += step * scale;
        scale *= params.km();
    }
    return off;
}

HatModel hat_pi_model(const TemplateParams& params, int levels, const caps& limits) {
    make_template_params(params.m, params.k);
    if (levels < 1) fail(errc::bad_input, "model needs at least one level");
    HatModel model;
    model.params = params;
    model.levels = levels;
    model.side = 1;
    for (int t = 0; t < levels; ++t) {
        model.side *= params.km();
        if (model.side * model.side > limits.complex_faces)
            fail(errc::cap_exceeded, "model lattice exceeds the face cap");
    }
    return model;
}

int find_copy_level(const HatModel& model, const std::vector<HatCell>& cells) {
    if (cells.empty()) fail(errc::bad_input, "empty cell set");
    long long minx = cells[0].x, maxx = cells[0].x, miny = cells[0].y, maxy = cells[0].y;
    for (const auto& c : cells) {
        if (!model.cell_valid(c.x, c.y))
            fail(errc::bad_input, "cell set leaves the valid part of the model");
        minx = std::min(minx, c.x);
        maxx = std::max(maxx, c.x);
        miny = std::min(miny, c.y);
        maxy = std::max(maxy, c.y);
    }
    const long long ex = maxx - minx + 1, ey = maxy - miny + 1;

    for (int j = 0; j <= model.levels; ++j) {
        const long long L = model.extent(j);
        if (ex > L || ey > L) continue;
        const long long o = model.origin(j);
        for (long long ox = o; ox <= o + L - ex; ++ox)
            for (long long oy = o; oy <= o + L - ey; ++oy) {
                bool ok = true;
                for (const auto& c : cells)
                    if (!model.cell_valid(c.x - minx + ox, c.y - miny + oy)) {
                        ok = false;
                        break;
                    }
                if (ok) return j;
            }
    }
    fail(errc::precondition, "no translated copy of the set fits the model");
}

double hat_boundary_gap(const TemplateParams& params, int depth, int g, const caps& limits) {
    if (depth < 1) fail(errc::bad_input, "boundary gap needs depth at least one");
    auto P = build_template(params, depth, g, true, limits);

    std::vector<double> dist;
    P.graph()->dijkstra_multi(P.boundary_cycle(), dist);

    // scan every vertex of the first-generation band faces, skipping the
    // positions swallowed by deeper holes
    const auto& band = P.bands()[static_cast<std::size_t>(P.band_by_address({}))];
    double nearest = kInf;
    for (int f = 0; f < P.m(); ++f) {
        const int panel = band.first_face + f;
        const auto& pan = P.panels()[static_cast<std::size_t>(panel)];
        const int wg = pan.w * P.g(), hg = pan.h * P.g();
        for (int vy = 0; vy <= hg; ++vy)
            for (int vx = 0; vx <= wg; ++vx) {
                const std::int32_t id = P.vertex_lookup(panel, vx, vy);
                if (id >= 0) nearest = std::min(nearest, dist[static_cast<std::size_t>(id)]);
            }
    }
    const double scale = static_cast<double>(params.km()) * params.km();
    return nearest * scale;
}

}  // namespace cdimlab
