#include "cdimlab/square_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cdimlab {

namespace {

long long ipow_checked(long long base, int exp, long long cap, const char* what) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / base) fail(errc::cap_exceeded, std::string(what) + " exceeds the configured cap");
        v *= base;
    }
    return v;
}

// union-find with path halving; the smallest id in a class stays the root,
// which keeps final vertex numbering deterministic
struct DisjointSet {
    std::vector<std::int32_t> parent;

    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            auto& p = parent[static_cast<std::size_t>(v)];
            p = parent[static_cast<std::size_t>(p)];
            v = p;
        }
        return v;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[static_cast<std::size_t>(b)] = a;
        else parent[static_cast<std::size_t>(a)] = b;
    }
};

constexpr int kTagHX = 0;
constexpr int kTagHY = 1;
constexpr int kTagDiag = 2;

std::uint64_t pack_edge(std::int64_t a, std::int64_t b, int tag) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 33) | (static_cast<std::uint64_t>(b) << 2) |
           static_cast<std::uint64_t>(tag);
}

}  // namespace

TemplateParams make_template_params(int m, int k) {
    if (m < 2) fail(errc::bad_input, "band multiplicity m must be at least 2");
    if (k < 3 || k % 2 == 0) fail(errc::bad_input, "grid parameter k must be odd and at least 3");
    TemplateParams p;
    p.m = m;
    p.k = k;
    return p;
}

long long SquareComplex::cell_count() const {
    long long total = 0;
    for (const auto& p : panels_) {
        long long flat = static_cast<long long>(p.w) * p.h;
        for (const auto& h : p.holes) flat -= static_cast<long long>(h.size) * h.size;
        total += flat;
    }
    return total;
}

long long SquareComplex::band_count(int generation) const {
    long long n = 0;
    for (const auto& b : bands_) n += (b.generation == generation) ? 1 : 0;
    return n;
}

int SquareComplex::band_by_address(const std::vector<int>& address) const {
    auto it = band_index_.find(address);
    return it == band_index_.end() ? -1 : it->second;
}

std::int64_t SquareComplex::grid_index(int panel, int vx, int vy) const {
    const auto& p = panels_[static_cast<std::size_t>(panel)];
    return vert0_[static_cast<std::size_t>(panel)] +
           static_cast<std::int64_t>(vy) * (static_cast<std::int64_t>(p.w) * g_ + 1) + vx;
}

void SquareComplex::build_graph(const caps& limits) {
    const int g = g_;
    std::int64_t total = 0;
    vert0_.assign(panels_.size(), 0);
    for (std::size_t p = 0; p < panels_.size(); ++p) {
        vert0_[p] = total;
        total += (static_cast<std::int64_t>(panels_[p].w) * g + 1) *
                 (static_cast<std::int64_t>(panels_[p].h) * g + 1);
    }
    if (total > limits.graph_vertices)
        fail(errc::cap_exceeded, "metric graph size exceeds the vertex cap");
    if (total >= (1LL << 31))
        fail(errc::cap_exceeded, "metric graph does not fit 32-bit vertex ids");

    // mark hole interiors; rim vertices stay part of the sheet
    vmap_.assign(panels_.size(), {});
    for (std::size_t p = 0; p < panels_.size(); ++p) {
        const auto& pan = panels_[p];
        const int wg = pan.w * g, hg = pan.h * g;
        vmap_[p].assign(static_cast<std::size_t>(wg + 1) * (hg + 1), 0);
        for (const auto& hole : pan.holes) {
            const int x0 = hole.x * g, y0 = hole.y * g, sg = hole.size * g;
            for (int vy = y0 + 1; vy < y0 + sg; ++vy)
                for (int vx = x0 + 1; vx < x0 + sg; ++vx)
                    vmap_[p][static_cast<std::size_t>(vy) * (wg + 1) + vx] = -1;
        }
    }

    std::vector<std::uint64_t> edges;
    {
        std::int64_t guess = 0;
        for (const auto& pan : panels_)
            guess += 4LL * pan.w * pan.h * g * g + static_cast<std::int64_t>(pan.w + pan.h) * g;
        edges.reserve(static_cast<std::size_t>(guess));
    }

    std::vector<std::uint8_t> hole_cell;
    for (std::size_t p = 0; p < panels_.size(); ++p) {
        const auto& pan = panels_[p];
        const int wg = pan.w * g, hg = pan.h * g;
        const std::size_t W = static_cast<std::size_t>(wg + 1);
        const auto& vm = vmap_[p];
        const std::int64_t base = vert0_[p];

        hole_cell.assign(static_cast<std::size_t>(wg) * hg, 0);
        for (const auto& hole : pan.holes) {
            const int x0 = hole.x * g, y0 = hole.y * g, sg = hole.size * g;
            for (int sy = y0; sy < y0 + sg; ++sy)
                std::fill_n(hole_cell.begin() + static_cast<std::size_t>(sy) * wg + x0, sg,
                            std::uint8_t{1});
        }

        for (int vy = 0; vy <= hg; ++vy) {
            const std::size_t row = static_cast<std::size_t>(vy) * W;
            for (int vx = 0; vx < wg; ++vx)
                if (vm[row + vx] == 0 && vm[row + vx + 1] == 0)
                    edges.push_back(pack_edge(base + static_cast<std::int64_t>(row) + vx,
                                              base + static_cast<std::int64_t>(row) + vx + 1,
                                              kTagHX));
        }
        for (int vy = 0; vy < hg; ++vy) {
            const std::size_t row = static_cast<std::size_t>(vy) * W;
            for (int vx = 0; vx <= wg; ++vx)
                if (vm[row + vx] == 0 && vm[row + W + vx] == 0)
                    edges.push_back(pack_edge(base + static_cast<std::int64_t>(row) + vx,
                                              base + static_cast<std::int64_t>(row + W) + vx,
                                              kTagHY));
        }
        for (int sy = 0; sy < hg; ++sy) {
            const std::size_t crow = static_cast<std::size_t>(sy) * wg;
            const std::size_t vrow = static_cast<std::size_t>(sy) * W;
            for (int sx = 0; sx < wg; ++sx) {
                if (hole_cell[crow + sx]) continue;
                edges.push_back(pack_edge(base + static_cast<std::int64_t>(vrow) + sx,
                                          base + static_cast<std::int64_t>(vrow + W) + sx + 1,
                                          kTagDiag));
                edges.push_back(pack_edge(base + static_cast<std::int64_t>(vrow) + sx + 1,
                                          base + static_cast<std::int64_t>(vrow + W) + sx,
                                          kTagDiag));
            }
        }
    }
    hole_cell = {};

    DisjointSet ds(static_cast<std::size_t>(total));
    for (const auto& band : bands_) {
        const int p0 = band.first_face;
        const auto& face0 = panels_[static_cast<std::size_t>(p0)];
        const int wg = face0.w * g, hg = face0.h * g;

        // cyclic wrap: left column of face f lands on the right column of face f+1
        for (int f = 0; f < m_; ++f) {
            const int pf = p0 + f, pn = p0 + (f + 1) % m_;
            for (int vy = 0; vy <= hg; ++vy)
                ds.unite(static_cast<std::int32_t>(grid_index(pf, 0, vy)),
                         static_cast<std::int32_t>(grid_index(pn, wg, vy)));
        }
        // the y = 0 side is one circle shared by every face
        for (int f = 1; f < m_; ++f)
            for (int vx = 0; vx <= wg; ++vx)
                ds.unite(static_cast<std::int32_t>(grid_index(p0, vx, 0)),
                         static_cast<std::int32_t>(grid_index(p0 + f, vx, 0)));

        if (band.parent_hole < 0) continue;

        // free rim of the band follows the parent hole rim, both walked from
        // their marked corner: hole counterclockwise, band in face order
        // 0, m-1, ..., 1 along the top side
        const auto& hole =
            panels_[static_cast<std::size_t>(band.parent_panel)].holes[static_cast<std::size_t>(
                band.parent_hole)];
        const int hx = hole.x * g, hy = hole.y * g, sg = hole.size * g;
        std::vector<std::int64_t> rim;
        rim.reserve(static_cast<std::size_t>(4) * sg);
        for (int t = 0; t < sg; ++t) rim.push_back(grid_index(band.parent_panel, hx + t, hy));
        for (int t = 0; t < sg; ++t) rim.push_back(grid_index(band.parent_panel, hx + sg, hy + t));
        for (int t = 0; t < sg; ++t)
            rim.push_back(grid_index(band.parent_panel, hx + sg - t, hy + sg));
        for (int t = 0; t < sg; ++t) rim.push_back(grid_index(band.parent_panel, hx, hy + sg - t));

        std::size_t j = 0;
        for (int step = 0; step < m_; ++step) {
            const int f = (m_ - step) % m_;
            for (int t = 0; t < wg; ++t, ++j)
                ds.unite(static_cast<std::int32_t>(grid_index(p0 + f, t, hg)),
                         static_cast<std::int32_t>(rim[j]));
        }
    }

    // compact to final ids, roots first come first served in provisional order
    std::vector<std::int32_t> final_id(static_cast<std::size_t>(total), -1);
    std::int32_t next = 0;
    {
        std::int64_t prov = 0;
        for (std::size_t p = 0; p < panels_.size(); ++p) {
            auto& vm = vmap_[p];
            for (auto& entry : vm) {
                if (entry == 0) {
                    const std::int32_t r = ds.find(static_cast<std::int32_t>(prov));
                    if (final_id[static_cast<std::size_t>(r)] < 0)
                        final_id[static_cast<std::size_t>(r)] = next++;
                    entry = final_id[static_cast<std::size_t>(r)];
                }
                ++prov;
            }
        }
    }
    vertex_count_ = next;

    std::size_t keep = 0;
    for (const auto e : edges) {
        const auto a = static_cast<std::int32_t>(e >> 33);
        const auto b = static_cast<std::int32_t>((e >> 2) & ((1ULL << 31) - 1));
        const int tag = static_cast<int>(e & 3);
        const std::int32_t a2 = final_id[static_cast<std::size_t>(ds.find(a))];
        const std::int32_t b2 = final_id[static_cast<std::size_t>(ds.find(b))];
        if (a2 == b2) continue;
        edges[keep++] = pack_edge(a2, b2, tag);
    }
    edges.resize(keep);
    ds.parent = {};
    final_id = {};
    std::sort(edges.begin(), edges.end());
    // duplicates come from glued seams; endpoint pairs decide, the step tags
    // of a merged pair always carry equal lengths
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](std::uint64_t x, std::uint64_t y) { return (x >> 2) == (y >> 2); }),
                edges.end());

    auto graph = std::make_shared<MetricGraph>();
    graph->init(vertex_count_,
                {cell_x_ / g, cell_y_ / g, std::hypot(cell_x_ / g, cell_y_ / g)});
    for (const auto& e : edges) {
        graph->add_edge(static_cast<std::int32_t>(e >> 33),
                        static_cast<std::int32_t>((e >> 2) & ((1ULL << 31) - 1)),
                        static_cast<int>(e & 3));
    }
    edges = {};
    edges.shrink_to_fit();
    graph->seal();
    graph_ = std::move(graph);
}

SquareComplex build_band(int m, double a, double b, int g, const caps& limits) {
    if (m < 2) fail(errc::bad_input, "band multiplicity m must be at least 2");
    if (!(a > 0.0) || !(b > 0.0)) fail(errc::bad_input, "band side lengths must be positive");
    if (g < 2) fail(errc::bad_input, "grid subdivision g must be at least 2");

    SquareComplex sc;
    sc.m_ = m;
    sc.k_ = 0;
    sc.depth_ = 0;
    sc.g_ = g;
    sc.cell_x_ = a;
    sc.cell_y_ = b;
    sc.panels_.resize(static_cast<std::size_t>(m));
    for (int f = 0; f < m; ++f) {
        sc.panels_[static_cast<std::size_t>(f)].w = 1;
        sc.panels_[static_cast<std::size_t>(f)].h = 1;
        sc.panels_[static_cast<std::size_t>(f)].band = 0;
        sc.panels_[static_cast<std::size_t>(f)].face = f;
    }
    Band band;
    band.generation = 1;
    sc.bands_.push_back(band);
    sc.band_index_[{}] = 0;
    sc.build_graph(limits);
    return sc;
}

SquareComplex build_template(const TemplateParams& params, int depth, int g, bool with_graph,
                             const caps& limits) {
    if (depth < 0) fail(errc::bad_input, "template depth must be nonnegative");
    if (g < 2) fail(errc::bad_input, "grid subdivision g must be at least 2");
    make_template_params(params.m, params.k);
    ipow_checked(params.s(), depth, limits.complex_faces, "template face count");

    const int m = params.m, km = params.km(), ml = params.m * params.l();
    const long long side = ipow_checked(km, depth, limits.complex_faces, "template side");

    SquareComplex sc;
    sc.m_ = m;
    sc.k_ = params.k;
    sc.depth_ = depth;
    sc.g_ = g;
    sc.cell_x_ = sc.cell_y_ = 1.0 / static_cast<double>(side);

    Panel top;
    top.w = top.h = static_cast<int>(side);
    sc.panels_.push_back(top);

    // depth-first block substitution: each visited region of u*km cells gets
    // its middle hole and band, then recurses into the km*km grid blocks and
    // the 4m*m band blocks
    struct Frame {
        int panel, x0, y0, levels;
    };
    std::vector<int> address;
    const int grid_letters = km * km - m * m;

    auto process = [&](auto&& self, int panel, int x0, int y0, int levels) -> void {
        if (levels == 0) return;
        long long u1ll = 1;
        for (int i = 1; i < levels; ++i) u1ll *= km;
        const int u1 = static_cast<int>(u1ll);

        Hole hole;
        hole.x = x0 + ml * u1;
        hole.y = y0 + ml * u1;
        hole.size = m * u1;
        hole.band = static_cast<int>(sc.bands_.size());
        sc.panels_[static_cast<std::size_t>(panel)].holes.push_back(hole);

        Band band;
        band.generation = depth - levels + 1;
        band.parent_panel = panel;
        band.parent_hole = static_cast<int>(sc.panels_[static_cast<std::size_t>(panel)].holes.size()) - 1;
        band.first_face = static_cast<int>(sc.panels_.size());
        band.address = address;
        const int band_id = static_cast<int>(sc.bands_.size());
        sc.bands_.push_back(band);
        sc.band_index_[address] = band_id;
        for (int f = 0; f < m; ++f) {
            Panel face;
            face.w = 4 * u1;
            face.h = m * u1;
            face.band = band_id;
            face.face = f;
            sc.panels_.push_back(face);
        }

        int letter = 0;
        for (int gy = 0; gy < km; ++gy)
            for (int gx = 0; gx < km; ++gx) {
                if (gx >= ml && gx < ml + m && gy >= ml && gy < ml + m) continue;
                address.push_back(letter++);
                self(self, panel, x0 + gx * u1, y0 + gy * u1, levels - 1);
                address.pop_back();
            }
        for (int f = 0; f < m; ++f)
            for (int by = 0; by < m; ++by)
                for (int bx = 0; bx < 4; ++bx) {
                    address.push_back(grid_letters + f * 4 * m + by * 4 + bx);
                    self(self, sc.bands_[static_cast<std::size_t>(band_id)].first_face + f,
                         bx * u1, by * u1, levels - 1);
                    address.pop_back();
                }
    };
    process(process, 0, 0, 0, depth);

    if (with_graph) sc.build_graph(limits);
    return sc;
}

std::int32_t SquareComplex::vertex_at(const ComplexPoint& p) const {
    if (!graph_) fail(errc::bad_input, "complex was built without a metric graph");
    if (p.panel < 0 || p.panel >= static_cast<int>(panels_.size()))
        fail(errc::bad_input, "panel id out of range");
    const auto& pan = panels_[static_cast<std::size_t>(p.panel)];
    const int wg = pan.w * g_, hg = pan.h * g_;
    auto snap = [](double v, double cell, int grid, int hi) {
        const auto r = static_cast<int>(std::llround(v / cell * grid));
        return std::clamp(r, 0, hi);
    };
    const int vx = snap(p.x, cell_x_, g_, wg);
    const int vy = snap(p.y, cell_y_, g_, hg);
    const std::int32_t id = vmap_[static_cast<std::size_t>(p.panel)]
                                 [static_cast<std::size_t>(vy) * (wg + 1) + vx];
    if (id < 0) fail(errc::bad_input, "point lies inside a hole of its panel");
    return id;
}

std::int32_t SquareComplex::vertex_lookup(int panel, int vx, int vy) const {
    if (!graph_) fail(errc::bad_input, "complex was built without a metric graph");
    if (panel < 0 || panel >= static_cast<int>(panels_.size()))
        fail(errc::bad_input, "panel id out of range");
    const auto& pan = panels_[static_cast<std::size_t>(panel)];
    const int wg = pan.w * g_, hg = pan.h * g_;
    if (vx < 0 || vx > wg || vy < 0 || vy > hg)
        fail(errc::bad_input, "grid vertex outside its panel");
    return vmap_[static_cast<std::size_t>(panel)]
                [static_cast<std::size_t>(vy) * (wg + 1) + vx];
}

ComplexPoint SquareComplex::cell_center(int panel, int cx, int cy) const {
    ComplexPoint p;
    p.panel = panel;
    p.x = (cx + 0.5) * cell_x_;
    p.y = (cy + 0.5) * cell_y_;
    return p;
}

double SquareComplex::distance(const ComplexPoint& a, const ComplexPoint& b) const {
    const std::int32_t va = vertex_at(a), vb = vertex_at(b);
    std::vector<double> dist;
    graph_->dijkstra(va, dist);
    return dist[static_cast<std::size_t>(vb)];
}

std::vector<std::int32_t> SquareComplex::boundary_cycle() const {
    if (!graph_) fail(errc::bad_input, "complex was built without a metric graph");
    std::vector<std::int32_t> cycle;
    if (k_ == 0) {
        // standalone band: the free side opposite the singular circle
        const int wg = panels_[0].w * g_, hg = panels_[0].h * g_;
        cycle.reserve(static_cast<std::size_t>(m_) * wg);
        for (int step = 0; step < m_; ++step) {
            const int f = (m_ - step) % m_;
            for (int t = 0; t < wg; ++t)
                cycle.push_back(vmap_[static_cast<std::size_t>(f)]
                                     [static_cast<std::size_t>(hg) * (wg + 1) + t]);
        }
        return cycle;
    }
    const int WG = panels_[0].w * g_;
    const std::size_t W = static_cast<std::size_t>(WG) + 1;
    cycle.reserve(static_cast<std::size_t>(4) * WG);
    for (int t = 0; t < WG; ++t) cycle.push_back(vmap_[0][static_cast<std::size_t>(t)]);
    for (int t = 0; t < WG; ++t)
        cycle.push_back(vmap_[0][static_cast<std::size_t>(t) * W + WG]);
    for (int t = 0; t < WG; ++t)
        cycle.push_back(vmap_[0][static_cast<std::size_t>(WG) * W + (WG - t)]);
    for (int t = 0; t < WG; ++t)
        cycle.push_back(vmap_[0][static_cast<std::size_t>(WG - t) * W]);
    return cycle;
}

double SquareComplex::boundary_length() const {
    if (k_ == 0) return m_ * cell_x_ * panels_[0].w;
    return 4.0 * cell_x_ * panels_[0].w;
}

std::vector<std::int32_t> SquareComplex::singular_cycle(int band) const {
    if (!graph_) fail(errc::bad_input, "complex was built without a metric graph");
    if (band < 0 || band >= static_cast<int>(bands_.size()))
        fail(errc::bad_input, "band id out of range");
    const int p0 = bands_[static_cast<std::size_t>(band)].first_face;
    const int wg = panels_[static_cast<std::size_t>(p0)].w * g_;
    std::vector<std::int32_t> cycle;
    cycle.reserve(static_cast<std::size_t>(wg));
    for (int t = 0; t < wg; ++t)
        cycle.push_back(vmap_[static_cast<std::size_t>(p0)][static_cast<std::size_t>(t)]);
    return cycle;
}

double SquareComplex::max_boundary_clearance() const {
    std::vector<double> dist;
    graph_->dijkstra_multi(boundary_cycle(), dist);
    double best = 0.0;
    for (double d : dist) {
        if (d == kInf) fail(errc::internal, "complex metric graph is disconnected");
        best = std::max(best, d);
    }
    return best;
}

DiameterBounds SquareComplex::diameter_bounds() const {
    DiameterBounds out;
    out.upper = 2.0 * max_boundary_clearance() + boundary_length() / 2.0;

    std::vector<double> dist;
    graph_->dijkstra(0, dist);
    std::int32_t far = 0;
    for (std::size_t v = 0; v < dist.size(); ++v)
        if (dist[v] != kInf && dist[v] > dist[static_cast<std::size_t>(far)])
            far = static_cast<std::int32_t>(v);
    graph_->dijkstra(far, dist);
    for (double d : dist)
        if (d != kInf) out.lower = std::max(out.lower, d);
    return out;
}

std::vector<std::int32_t> SquareComplex::corner_vertices() const {
    if (!graph_) fail(errc::bad_input, "complex was built without a metric graph");
    std::vector<std::int32_t> out;
    for (std::size_t p = 0; p < panels_.size(); ++p) {
        const int wg = panels_[p].w * g_, hg = panels_[p].h * g_;
        for (int vy = 0; vy <= hg; vy += g_)
            for (int vx = 0; vx <= wg; vx += g_) {
                const std::int32_t id = vmap_[p][static_cast<std::size_t>(vy) * (wg + 1) + vx];
                if (id >= 0) out.push_back(id);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ComplexPoint SquareComplex::random_point(rng& gen) const {
    std::vector<long long> cum(panels_.size() + 1, 0);
    for (std::size_t p = 0; p < panels_.size(); ++p) {
        long long flat = static_cast<long long>(panels_[p].w) * panels_[p].h;
        for (const auto& h : panels_[p].holes) flat -= static_cast<long long>(h.size) * h.size;
        cum[p + 1] = cum[p] + flat;
    }
    const long long pick = static_cast<long long>(gen.next_below(static_cast<std::uint64_t>(cum.back())));
    const auto it = std::upper_bound(cum.begin(), cum.end(), pick);
    const auto panel = static_cast<std::size_t>(it - cum.begin() - 1);
    const auto& pan = panels_[panel];
    for (;;) {
        const int cx = static_cast<int>(gen.next_below(static_cast<std::uint64_t>(pan.w)));
        const int cy = static_cast<int>(gen.next_below(static_cast<std::uint64_t>(pan.h)));
        bool inside = false;
        for (const auto& h : pan.holes)
            if (cx >= h.x && cx < h.x + h.size && cy >= h.y && cy < h.y + h.size) {
                inside = true;
                break;
            }
        if (inside) continue;
        ComplexPoint p;
        p.panel = static_cast<int>(panel);
        p.x = (cx + gen.next_double()) * cell_x_;
        p.y = (cy + gen.next_double()) * cell_y_;
        return p;
    }
}

std::pair<double, double> band_collapse_map(int m, double a, double b, const ComplexPoint& p) {
    if (m < 2) fail(errc::bad_input, "band multiplicity m must be at least 2");
    if (!(a > 0.0) || !(b > 0.0)) fail(errc::bad_input, "band side lengths must be positive");
    if (b < a * std::sqrt(2.0) / 2.0 - kNumSlack)
        fail(errc::precondition, "collapse needs height b >= a*sqrt(2)/2 to stay 1-Lipschitz");
    const double face_w = 4.0 * a / m;
    const double tol = 1e-9 * std::max(a, b);
    if (p.panel < 0 || p.panel >= m) fail(errc::bad_input, "band face id out of range");
    if (p.x < -tol || p.x > face_w + tol || p.y < -tol || p.y > b + tol)
        fail(errc::bad_input, "point outside the band face");

    // walk position along the free rim: face order 0, m-1, ..., 1
    const int ord = (m - p.panel) % m;
    double pos = std::fmod(ord * face_w + std::clamp(p.x, 0.0, face_w), 4.0 * a);
    const int section = std::min(static_cast<int>(pos / a), 3);
    const double r = pos - section * a;
    double bx = 0.0, by = 0.0;
    switch (section) {
        case 0: bx = r; by = 0.0; break;
        case 1: bx = a; by = r; break;
        case 2: bx = a - r; by = a; break;
        default: bx = 0.0; by = a - r; break;
    }
    const double t = std::clamp(p.y, 0.0, b) / b;
    const double cx = a / 2.0, cy = a / 2.0;
    return {cx + t * (bx - cx), cy + t * (by - cy)};
}

BlockRef letter_ref(const TemplateParams& params, int letter) {
    const int km = params.km(), m = params.m, ml = params.m * params.l();
    if (letter < 0 || letter >= static_cast<int>(params.s()))
        fail(errc::bad_input, "block letter out of range");
    const int grid_letters = km * km - m * m;
    BlockRef ref;
    if (letter < grid_letters) {
        const int full = ml * km;      // letters in the rows below the hole
        const int mid = m * (km - m);  // letters in the rows crossing it
        if (letter < full) {
            ref.gy = letter / km;
            ref.gx = letter % km;
        } else if (letter < full + mid) {
            const int r = letter - full;
            ref.gy = ml + r / (km - m);
            const int c = r % (km - m);
            ref.gx = c < ml ? c : c + m;
        } else {
            const int r = letter - full - mid;
            ref.gy = ml + m + r / km;
            ref.gx = r % km;
        }
        return ref;
    }
    ref.in_band = true;
    const int t = letter - grid_letters;
    ref.face = t / (4 * m);
    ref.by = (t % (4 * m)) / 4;
    ref.bx = t % 4;
    return ref;
}

int ref_letter(const TemplateParams& params, const BlockRef& ref) {
    const int km = params.km(), m = params.m, ml = params.m * params.l();
    const int grid_letters = km * km - m * m;
    if (ref.in_band) {
        if (ref.face < 0 || ref.face >= m || ref.bx < 0 || ref.bx >= 4 || ref.by < 0 ||
            ref.by >= m)
            fail(errc::bad_input, "band block coordinates out of range");
        return grid_letters + ref.face * 4 * m + ref.by * 4 + ref.bx;
    }
    if (ref.gx < 0 || ref.gx >= km || ref.gy < 0 || ref.gy >= km)
        fail(errc::bad_input, "grid block coordinates out of range");
    if (ref.gx >= ml && ref.gx < ml + m && ref.gy >= ml && ref.gy < ml + m)
        fail(errc::bad_input, "grid block coordinates land in the hole");
    if (ref.gy < ml) return ref.gy * km + ref.gx;
    if (ref.gy < ml + m)
        return ml * km + (ref.gy - ml) * (km - m) + (ref.gx < ml ? ref.gx : ref.gx - m);
    return ml * km + m * (km - m) + (ref.gy - ml - m) * km + ref.gx;
}

}  // namespace cdimlab
