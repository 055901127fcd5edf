#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "cdimlab/common.hpp"
#include "cdimlab/square_complex.hpp"
#include "oracles.hpp"

using namespace cdimlab;

namespace {

ComplexPoint pt(int panel, double x, double y) {
    ComplexPoint p;
    p.panel = panel;
    p.x = x;
    p.y = y;
    return p;
}

// snap physical coordinates onto the metric grid so that graph distances and
// euclidean formulas talk about the same points
ComplexPoint snapped(const SquareComplex& C, ComplexPoint p) {
    const double sx = C.cell_x() / C.g(), sy = C.cell_y() / C.g();
    p.x = static_cast<double>(std::llround(p.x / sx)) * sx;
    p.y = static_cast<double>(std::llround(p.y / sy)) * sy;
    return p;
}

bool all_distinct(const std::vector<std::int32_t>& ids) {
    std::set<std::int32_t> seen(ids.begin(), ids.end());
    return seen.size() == ids.size();
}

}  // namespace

TEST_CASE("band construction realizes the cyclic gluing") {
    auto B = build_band(3, 1.0, 1.0, 8);
    CHECK(B.m() == 3);
    CHECK(B.cell_count() == 3);
    CHECK(B.panels().size() == 3);
    CHECK(B.bands().size() == 1);

    // left column of face f is the right column of face f+1, heights kept
    CHECK(B.vertex_at(pt(0, 0.0, 0.5)) == B.vertex_at(pt(1, 1.0, 0.5)));
    CHECK(B.vertex_at(pt(1, 0.0, 0.25)) == B.vertex_at(pt(2, 1.0, 0.25)));
    CHECK(B.vertex_at(pt(2, 0.0, 1.0)) == B.vertex_at(pt(0, 1.0, 1.0)));
    CHECK(B.vertex_at(pt(0, 0.0, 0.5)) != B.vertex_at(pt(2, 0.0, 0.5)));

    // the y = 0 side is one circle shared by all faces
    CHECK(B.vertex_at(pt(0, 0.375, 0.0)) == B.vertex_at(pt(1, 0.375, 0.0)));
    CHECK(B.vertex_at(pt(0, 0.375, 0.0)) == B.vertex_at(pt(2, 0.375, 0.0)));
    CHECK(B.vertex_at(pt(0, 0.375, 0.0)) != B.vertex_at(pt(0, 0.5, 0.0)));

    auto singular = B.singular_cycle(0);
    CHECK(singular.size() == 8);
    CHECK(all_distinct(singular));

    auto rim = B.boundary_cycle();
    CHECK(rim.size() == 3 * 8);
    CHECK(all_distinct(rim));
    CHECK(B.boundary_length() == doctest::Approx(3.0));
}

TEST_CASE("band boundary is a closed geodesic of length m*a") {
    auto B = build_band(3, 1.0, 1.0, 8);
    auto rim = B.boundary_cycle();
    std::vector<double> dist;
    B.graph()->dijkstra(rim[0], dist);

    // consecutive rim vertices are joined by single horizontal steps and the
    // cycle closes up
    const double step = 1.0 / 8.0;
    CHECK(dist[static_cast<std::size_t>(rim[1])] == doctest::Approx(step));
    CHECK(dist[static_cast<std::size_t>(rim.back())] == doctest::Approx(step));

    // halfway around the rim the arc itself is shortest: any shortcut through
    // the band has to cross the singular circle, paying at least 2b = 2
    const auto far = rim[rim.size() / 2];
    CHECK(dist[static_cast<std::size_t>(far)] == doctest::Approx(1.5));

    // distance from the rim to the singular circle is the face height
    std::vector<double> up;
    B.graph()->dijkstra_multi(B.singular_cycle(0), up);
    double nearest = kInf;
    for (auto v : rim) nearest = std::min(nearest, up[static_cast<std::size_t>(v)]);
    CHECK(nearest == doctest::Approx(1.0));
}

TEST_CASE("the 2-band is the Moebius band") {
    auto B = build_band(2, 1.0, 0.75, 8);
    auto rim = B.boundary_cycle();
    CHECK(rim.size() == 2 * 8);
    CHECK(all_distinct(rim));
    CHECK(B.boundary_length() == doctest::Approx(2.0));
    CHECK(B.singular_cycle(0).size() == 8);

    // one full trip along the rim comes back; half a trip lands on the other
    // face's copy of the start column
    CHECK(B.vertex_at(pt(0, 0.0, 0.75)) == B.vertex_at(pt(1, 1.0, 0.75)));
    CHECK(B.vertex_at(pt(1, 0.0, 0.75)) == B.vertex_at(pt(0, 1.0, 0.75)));
}

TEST_CASE("band builder rejects bad parameters") {
    auto [k1, m1] = oracle::catch_error([] { build_band(1, 1.0, 1.0, 8); });
    CHECK(k1 == errc::bad_input);
    CHECK(oracle::mentions(m1, "at least 2"));

    auto [k2, m2] = oracle::catch_error([] { build_band(3, -1.0, 1.0, 8); });
    CHECK(k2 == errc::bad_input);
    CHECK(oracle::mentions(m2, "positive"));

    auto [k3, m3] = oracle::catch_error([] { build_band(3, 1.0, 1.0, 1); });
    CHECK(k3 == errc::bad_input);
    CHECK(oracle::mentions(m3, "subdivision"));
}

TEST_CASE("collapse sends the singular circle to the center and the rim around the square") {
    const int m = 3;
    const double a = 0.9, b = 0.9;
    const double fw = 4.0 * a / m;

    for (int f = 0; f < m; ++f) {
        auto [cx, cy] = band_collapse_map(m, a, b, pt(f, 0.3 * (f + 1), 0.0));
        CHECK(cx == doctest::Approx(a / 2));
        CHECK(cy == doctest::Approx(a / 2));
    }

    // rim positions at whole multiples of the side length hit the corners;
    // the rim is walked face 0, then m-1 down to 1, each in +x direction
    auto corner = [&](int face, double x) { return band_collapse_map(m, a, b, pt(face, x, b)); };
    CHECK(corner(0, 0.0).first == doctest::Approx(0.0));
    CHECK(corner(0, 0.0).second == doctest::Approx(0.0));
    CHECK(corner(0, a).first == doctest::Approx(a));
    CHECK(corner(0, a).second == doctest::Approx(0.0));
    CHECK(corner(2, 2 * a - fw).first == doctest::Approx(a));
    CHECK(corner(2, 2 * a - fw).second == doctest::Approx(a));
    CHECK(corner(1, 3 * a - 2 * fw).first == doctest::Approx(0.0));
    CHECK(corner(1, 3 * a - 2 * fw).second == doctest::Approx(a));

    // wrap seam: the end of face f matches the start of face f+1
    for (int f = 0; f < m; ++f) {
        const double y = 0.3 + 0.2 * f;
        auto left = band_collapse_map(m, a, b, pt(f, 0.0, y));
        auto right = band_collapse_map(m, a, b, pt((f + 1) % m, fw, y));
        CHECK(left.first == doctest::Approx(right.first));
        CHECK(left.second == doctest::Approx(right.second));
    }

    // radial segments are affine: the midpoint maps to the affine midpoint
    auto rim_img = band_collapse_map(m, a, b, pt(1, 0.7, b));
    auto mid_img = band_collapse_map(m, a, b, pt(1, 0.7, b / 2));
    CHECK(mid_img.first == doctest::Approx((rim_img.first + a / 2) / 2));
    CHECK(mid_img.second == doctest::Approx((rim_img.second + a / 2) / 2));

    auto [kind, msg] = oracle::catch_error([&] { band_collapse_map(m, a, 0.5, pt(0, 0.1, 0.1)); });
    CHECK(kind == errc::precondition);
    CHECK(oracle::mentions(msg, "sqrt(2)/2"));
}

TEST_CASE("collapse is 1-Lipschitz against sampled band distances") {
    const int m = 3;
    const double a = 0.9, b = 0.9;
    auto B = build_band(m, 4.0 * a / m, b, 16);
    rng gen(2026);

    for (int trial = 0; trial < 25; ++trial) {
        auto p = snapped(B, B.random_point(gen));
        auto q = snapped(B, B.random_point(gen));
        auto ip = band_collapse_map(m, a, b, p);
        auto iq = band_collapse_map(m, a, b, q);
        const double image_gap = std::hypot(ip.first - iq.first, ip.second - iq.second);
        CHECK(image_gap <= B.distance(p, q) + 1e-9);
    }
}

TEST_CASE("depth zero template is the unit square") {
    auto P0 = build_template(make_template_params(2, 3), 0, 8);
    CHECK(P0.cell_count() == 1);
    CHECK(P0.bands().empty());
    CHECK(P0.vertex_count() == 81);
    CHECK(P0.boundary_length() == doctest::Approx(4.0));

    auto bounds = P0.diameter_bounds();
    CHECK(bounds.lower <= bounds.upper + kNumSlack);
    CHECK(bounds.lower >= std::sqrt(2.0) - kNumSlack);
    CHECK(bounds.upper <= 3.0 + kNumSlack);
}

TEST_CASE("flat distances match euclidean lengths within the grid stretch") {
    auto P0 = build_template(make_template_params(2, 3), 0, 8);
    const auto p = pt(0, 0.125, 0.125), q = pt(0, 0.875, 0.5);
    const double exact = std::hypot(q.x - p.x, q.y - p.y);
    const double measured = P0.distance(p, q);
    CHECK(measured >= exact - kNumSlack);
    CHECK(measured <= exact * kGridStretch + kNumSlack);

    // opposite corners of a flat 2 x 1 strip of cells in the depth-1 template
    auto P1 = build_template(make_template_params(2, 3), 1, 8);
    const double cell = P1.cell_x();
    const double strip = P1.distance(pt(0, 0.0, 0.0), pt(0, 2 * cell, cell));
    CHECK(strip >= std::sqrt(5.0) * cell - kNumSlack);
    CHECK(strip <= std::sqrt(5.0) * cell * kGridStretch + kNumSlack);
}

TEST_CASE("template parameters validate and count blocks") {
    CHECK(make_template_params(2, 3).s() == 48);
    CHECK(make_template_params(2, 5).s() == 112);
    CHECK(make_template_params(3, 3).s() == 108);
    CHECK(make_template_params(2, 3).diam_bound() == doctest::Approx(3.6));

    auto [k1, m1] = oracle::catch_error([] { make_template_params(1, 3); });
    CHECK(k1 == errc::bad_input);
    auto [k2, m2] = oracle::catch_error([] { make_template_params(2, 4); });
    CHECK(k2 == errc::bad_input);
    CHECK(oracle::mentions(m2, "odd"));
}

TEST_CASE("depth one template has the advertised square structure") {
    auto P1 = build_template(make_template_params(2, 3), 1, 8);
    CHECK(P1.cell_count() == 48);
    CHECK(P1.panels().size() == 3);  // top sheet plus two band faces
    CHECK(P1.band_count(1) == 1);

    const auto& top = P1.panels()[0];
    CHECK(top.w == 6);
    CHECK(top.h == 6);
    REQUIRE(top.holes.size() == 1);
    CHECK(top.holes[0].x == 2);
    CHECK(top.holes[0].y == 2);
    CHECK(top.holes[0].size == 2);

    const auto& face = P1.panels()[1];
    CHECK(face.w == 4);
    CHECK(face.h == 2);

    auto [kind, msg] = oracle::catch_error([&] { P1.vertex_at(pt(0, 0.5, 0.5)); });
    CHECK(kind == errc::bad_input);
    CHECK(oracle::mentions(msg, "hole"));
}

TEST_CASE("deeper templates multiply the block count by s") {
    auto params = make_template_params(2, 3);
    auto P2 = build_template(params, 2, 8, false);
    CHECK(P2.cell_count() == 48LL * 48);
    CHECK(P2.band_count(1) == 1);
    CHECK(P2.band_count(2) == 48);

    auto P3 = build_template(params, 3, 8, false);
    CHECK(P3.cell_count() == 48LL * 48 * 48);
    CHECK(P3.band_count(2) == 48);
    CHECK(P3.band_count(3) == 48LL * 48);

    // every band is reachable by its address
    for (std::size_t b = 0; b < P3.bands().size(); ++b) {
        const auto& band = P3.bands()[b];
        CHECK(band.address.size() + 1 == static_cast<std::size_t>(band.generation));
        CHECK(P3.band_by_address(band.address) == static_cast<int>(b));
    }
    CHECK(P3.band_by_address({47, 12, 3}) == -1);
}

TEST_CASE("block letters round-trip through their grid positions") {
    for (auto [m, k] : {std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 3}}) {
        auto params = make_template_params(m, k);
        const int s = static_cast<int>(params.s());
        std::set<std::pair<int, int>> grid_seen;
        for (int letter = 0; letter < s; ++letter) {
            auto ref = letter_ref(params, letter);
            CHECK(ref_letter(params, ref) == letter);
            if (!ref.in_band) grid_seen.insert({ref.gx, ref.gy});
        }
        CHECK(static_cast<int>(grid_seen.size()) == params.km() * params.km() - m * m);

        auto [kind, msg] = oracle::catch_error([&] { letter_ref(params, s); });
        CHECK(kind == errc::bad_input);
        BlockRef hole_ref;
        hole_ref.gx = hole_ref.gy = params.m * params.l();
        auto [kind2, msg2] = oracle::catch_error([&] { ref_letter(params, hole_ref); });
        CHECK(kind2 == errc::bad_input);
        CHECK(oracle::mentions(msg2, "hole"));
    }
}

TEST_CASE("band rim gluing matches the collapse parametrization") {
    auto P1 = build_template(make_template_params(2, 3), 1, 8);
    const auto& band = P1.bands()[0];
    const auto& hole = P1.panels()[0].holes[0];
    const double cell = P1.cell_x();
    const double A = hole.size * cell;  // physical hole side, also face height
    const int p0 = band.first_face;
    const double fw = 4.0 * A / P1.m();

    // a rim point of the band and its collapse image name the same vertex
    for (int f = 0; f < P1.m(); ++f)
        for (int step = 0; step <= 8; ++step) {
            const double x = fw * step / 8.0;
            auto img = band_collapse_map(P1.m(), A, A, pt(f, x, A));
            const auto via_band = P1.vertex_at(pt(p0 + f, x, A));
            const auto via_top =
                P1.vertex_at(pt(0, hole.x * cell + img.first, hole.y * cell + img.second));
            CHECK(via_band == via_top);
        }

    // off the rim the faces are disjoint from the top sheet
    CHECK_NOTHROW(P1.vertex_at(pt(p0, 0.25, 0.125)));
}

TEST_CASE("diameter bounds certify the depth one template") {
    auto P1 = build_template(make_template_params(2, 3), 1, 8);
    auto bounds = P1.diameter_bounds();
    CHECK(bounds.lower <= bounds.upper + kNumSlack);
    CHECK(bounds.lower >= 1.0);
    CHECK(bounds.upper <= 3.6 * kGridStretch);
}

TEST_CASE("template builders enforce caps and input checks") {
    auto params = make_template_params(2, 3);
    caps tight;
    tight.complex_faces = 100;
    auto [k1, m1] = oracle::catch_error([&] { build_template(params, 2, 8, false, tight); });
    CHECK(k1 == errc::cap_exceeded);

    caps tiny;
    tiny.graph_vertices = 1000;
    auto [k2, m2] = oracle::catch_error([&] { build_template(params, 1, 8, true, tiny); });
    CHECK(k2 == errc::cap_exceeded);
    CHECK(oracle::mentions(m2, "vertex cap"));

    auto [k3, m3] = oracle::catch_error([&] { build_template(params, -1, 8); });
    CHECK(k3 == errc::bad_input);
}
