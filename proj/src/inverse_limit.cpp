#include "cdimlab/inverse_limit.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

namespace cdimlab {

const SquareComplex& TemplateTower::level(int i) const {
    if (i < 0 || i >= static_cast<int>(levels.size()))
        fail(errc::bad_input, "tower level out of range");
    return levels[static_cast<std::size_t>(i)];
}

TemplateTower build_tower(const TemplateParams& params, int depth, int g, bool with_graph,
                          const caps& limits) {
    if (depth < 0) fail(errc::bad_input, "tower depth must be nonnegative");
    TemplateTower tw;
    tw.params = make_template_params(params.m, params.k);
    tw.g = g;
    tw.levels.reserve(static_cast<std::size_t>(depth) + 1);
    for (int i = 0; i <= depth; ++i)
        tw.levels.push_back(build_template(tw.params, i, g, with_graph, limits));
    return tw;
}

ComplexPoint bonding_map(const TemplateTower& tw, int i, const ComplexPoint& p) {
    if (i < 0 || i + 1 > tw.depth()) fail(errc::bad_input, "bonding level out of range");
    const auto& src = tw.level(i + 1);
    const auto& dst = tw.level(i);
    if (p.panel < 0 || p.panel >= static_cast<int>(src.panels().size()))
        fail(errc::bad_input, "panel id out of range");

    const auto& pan = src.panels()[static_cast<std::size_t>(p.panel)];
    if (pan.band < 0) return p;  // top sheet, identical in both levels

    const auto& band = src.bands()[static_cast<std::size_t>(pan.band)];
    if (band.generation <= i) {
        const int twin = dst.band_by_address(band.address);
        if (twin < 0) fail(errc::internal, "band address missing from the coarser level");
        ComplexPoint out = p;
        out.panel = dst.bands()[static_cast<std::size_t>(twin)].first_face + pan.face;
        return out;
    }

    // deepest generation: collapse the band onto its parent hole square
    const auto& parent = src.panels()[static_cast<std::size_t>(band.parent_panel)];
    const auto& hole = parent.holes[static_cast<std::size_t>(band.parent_hole)];
    const double cell = src.cell_x();
    const double A = hole.size * cell;
    ComplexPoint local = p;
    local.panel = pan.face;
    auto [ix, iy] = band_collapse_map(src.m(), A, A, local);

    ComplexPoint out;
    out.x = hole.x * cell + ix;
    out.y = hole.y * cell + iy;
    if (parent.band < 0) {
        out.panel = 0;
    } else {
        const auto& pband = src.bands()[static_cast<std::size_t>(parent.band)];
        const int twin = dst.band_by_address(pband.address);
        if (twin < 0) fail(errc::internal, "parent band address missing from the coarser level");
        out.panel = dst.bands()[static_cast<std::size_t>(twin)].first_face + parent.face;
    }
    return out;
}

std::vector<double> limit_distance(const TemplateTower& tw, const ComplexPoint& p,
                                   const ComplexPoint& q) {
    std::vector<double> out(static_cast<std::size_t>(tw.depth()) + 1, 0.0);
    ComplexPoint a = p, b = q;
    for (int i = tw.depth(); i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = tw.level(i).distance(a, b);
        if (i > 0) {
            a = bonding_map(tw, i - 1, a);
            b = bonding_map(tw, i - 1, b);
        }
    }
    return out;
}

std::vector<std::vector<double>> limit_distance_batch(const TemplateTower& tw,
                                                      const ComplexPoint& src,
                                                      const std::vector<ComplexPoint>& targets) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(tw.depth()) + 1);
    ComplexPoint s = src;
    std::vector<ComplexPoint> ts = targets;
    std::vector<double> dist;
    for (int i = tw.depth(); i >= 0; --i) {
        const auto& level = tw.level(i);
        level.graph()->dijkstra(level.vertex_at(s), dist);
        auto& row = out[static_cast<std::size_t>(i)];
        row.reserve(ts.size());
        for (const auto& t : ts) row.push_back(dist[static_cast<std::size_t>(level.vertex_at(t))]);
        if (i > 0) {
            s = bonding_map(tw, i - 1, s);
            for (auto& t : ts) t = bonding_map(tw, i - 1, t);
        }
    }
    return out;
}

ComplexPoint selfsimilarity_map(const TemplateTower& tw, int letter, int i,
                                const ComplexPoint& p) {
    if (i < 0 || i + 1 > tw.depth()) fail(errc::bad_input, "source level out of range");
    const auto& src = tw.level(i);
    const auto& dst = tw.level(i + 1);
    const int km = tw.params.km();
    if (p.panel < 0 || p.panel >= static_cast<int>(src.panels().size()))
        fail(errc::bad_input, "panel id out of range");

    const auto& pan = src.panels()[static_cast<std::size_t>(p.panel)];
    ComplexPoint out;
    if (pan.band < 0) {
        const auto ref = letter_ref(tw.params, letter);
        if (!ref.in_band) {
            out.panel = 0;
            out.x = (ref.gx + p.x) / km;
            out.y = (ref.gy + p.y) / km;
            return out;
        }
        const int outer = dst.band_by_address({});
        out.panel = dst.bands()[static_cast<std::size_t>(outer)].first_face + ref.face;
        out.x = (ref.bx + p.x) / km;
        out.y = (ref.by + p.y) / km;
        return out;
    }

    letter_ref(tw.params, letter);  // range check
    const auto& band = src.bands()[static_cast<std::size_t>(pan.band)];
    BlockAddress address;
    address.reserve(band.address.size() + 1);
    address.push_back(letter);
    address.insert(address.end(), band.address.begin(), band.address.end());
    const int twin = dst.band_by_address(address);
    if (twin < 0) fail(errc::internal, "prefixed band address missing from the finer level");
    out.panel = dst.bands()[static_cast<std::size_t>(twin)].first_face + pan.face;
    out.x = p.x / km;
    out.y = p.y / km;
    return out;
}

bool osc_audit(const TemplateTower& tw, int i) {
    if (i < 0 || i + 1 > tw.depth()) fail(errc::bad_input, "audit level out of range");
    const auto& src = tw.level(i);
    const auto& dst = tw.level(i + 1);
    const auto s = static_cast<int>(tw.params.s());

    // block footprints: the letter enumeration must tile the km x km grid
    // minus the hole plus the 4m x m cells of every band face, one slot each
    std::set<std::tuple<bool, int, int, int>> slots;
    for (int letter = 0; letter < s; ++letter) {
        const auto ref = letter_ref(tw.params, letter);
        if (!ref.in_band) slots.insert({false, 0, ref.gx, ref.gy});
        else slots.insert({true, ref.face, ref.bx, ref.by});
    }
    if (static_cast<int>(slots.size()) != s) return false;

    // every deeper band of the refined level is some block's copy of a band
    // of the coarse level, and the counts agree letter by letter
    std::vector<long long> per_letter(static_cast<std::size_t>(s), 0);
    long long deeper = 0;
    for (const auto& band : dst.bands()) {
        if (band.generation < 2) continue;
        ++deeper;
        const int a = band.address.front();
        if (a < 0 || a >= s) return false;
        BlockAddress tail(band.address.begin() + 1, band.address.end());
        if (src.band_by_address(tail) < 0) return false;
        ++per_letter[static_cast<std::size_t>(a)];
    }
    const auto src_bands = static_cast<long long>(src.bands().size());
    if (deeper != src_bands * s) return false;
    for (const auto c : per_letter)
        if (c != src_bands) return false;
    return true;
}

}  // namespace cdimlab
