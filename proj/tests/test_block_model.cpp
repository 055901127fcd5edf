#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "cdimlab/block_model.hpp"
#include "cdimlab/common.hpp"
#include "oracles.hpp"

using namespace cdimlab;

namespace {

// every cell of the w x h box at (x0, y0)
std::vector<HatCell> box(long long x0, long long y0, long long w, long long h) {
    std::vector<HatCell> cells;
    for (long long y = 0; y < h; ++y)
        for (long long x = 0; x < w; ++x) cells.push_back({x0 + x, y0 + y});
    return cells;
}

// the 6x6 block at (x0, y0) minus the middle 2x2 hole, i.e. one template layer
std::vector<HatCell> punched_block(long long x0, long long y0) {
    std::vector<HatCell> cells;
    for (long long y = 0; y < 6; ++y)
        for (long long x = 0; x < 6; ++x) {
            if (x >= 2 && x < 4 && y >= 2 && y < 4) continue;
            cells.push_back({x0 + x, y0 + y});
        }
    return cells;
}

}  // namespace

TEST_CASE("model lattice validity follows the digit pairs") {
    auto M = hat_pi_model(make_template_params(2, 3), 3);
    CHECK(M.side == 216);

    // the hole block takes digits {2,3} in both coordinates at once
    CHECK(M.cell_valid(0, 0));
    CHECK(M.cell_valid(2, 1));
    CHECK(M.cell_valid(1, 3));
    CHECK_FALSE(M.cell_valid(2, 2));
    CHECK_FALSE(M.cell_valid(3, 2));
    CHECK_FALSE(M.cell_valid(2, 3));

    // (12,13) only clashes one scale up, (80,100) two scales up
    CHECK_FALSE(M.cell_valid(12, 13));
    CHECK_FALSE(M.cell_valid(80, 100));
    CHECK(M.cell_valid(12, 7));
    CHECK(M.cell_valid(80, 7));

    // outside the lattice nothing is valid
    CHECK_FALSE(M.cell_valid(-1, 0));
    CHECK_FALSE(M.cell_valid(0, 216));
}

TEST_CASE("nested regions sit on the flat diagonal chain") {
    auto M = hat_pi_model(make_template_params(2, 3), 3);
    CHECK(M.extent(0) == 1);
    CHECK(M.extent(1) == 6);
    CHECK(M.extent(2) == 36);
    CHECK(M.extent(3) == 216);
    CHECK(M.origin(0) == 43);
    CHECK(M.origin(1) == 42);
    CHECK(M.origin(2) == 36);
    CHECK(M.origin(3) == 0);

    // region(j) is contained in region(j+1) and consists of valid corners
    for (int j = 0; j + 1 <= M.levels; ++j) {
        CHECK(M.origin(j) >= M.origin(j + 1));
        CHECK(M.origin(j) + M.extent(j) <= M.origin(j + 1) + M.extent(j + 1));
    }
    for (int j = 0; j <= M.levels; ++j) CHECK(M.cell_valid(M.origin(j), M.origin(j)));

    auto [r1, m1] = oracle::catch_error([&] { (void)M.extent(4); });
    CHECK(r1 == errc::bad_input);
    auto [r2, m2] = oracle::catch_error([&] { (void)M.origin(-1); });
    CHECK(r2 == errc::bad_input);
    CHECK(oracle::mentions(m2, "level"));
}

TEST_CASE("model construction validates its inputs") {
    auto [r1, m1] = oracle::catch_error([] { hat_pi_model(make_template_params(2, 3), 0); });
    CHECK(r1 == errc::bad_input);
    auto [r2, m2] = oracle::catch_error([] {
        TemplateParams bad;
        bad.m = 2;
        bad.k = 4;
        hat_pi_model(bad, 2);
    });
    CHECK(r2 == errc::bad_input);

    caps tight;
    tight.complex_faces = 1000;
    auto [r3, m3] =
        oracle::catch_error([&] { hat_pi_model(make_template_params(2, 3), 2, tight); });
    CHECK(r3 == errc::cap_exceeded);
    CHECK(oracle::mentions(m3, "cap"));
}

TEST_CASE("single cells relocate into the innermost region") {
    auto M = hat_pi_model(make_template_params(2, 3), 3);
    CHECK(find_copy_level(M, {{0, 0}}) == 0);
    CHECK(find_copy_level(M, {{100, 7}}) == 0);
    CHECK(find_copy_level(M, {{43, 43}}) == 0);
}

TEST_CASE("small sets relocate one region out") {
    auto M = hat_pi_model(make_template_params(2, 3), 3);

    // a diagonal pair and a full 2x2 block both fit next to the hole
    CHECK(find_copy_level(M, {{0, 0}, {1, 1}}) == 1);
    CHECK(find_copy_level(M, box(0, 0, 2, 2)) == 1);

    // one whole punched layer fills the level-1 region exactly
    CHECK(find_copy_level(M, punched_block(210, 210)) == 1);
    CHECK(find_copy_level(M, punched_block(0, 0)) == 1);
}

TEST_CASE("solid blocks that cover hole digits need a bigger region") {
    auto M = hat_pi_model(make_template_params(2, 3), 3);

    // a full 3x3 block always hits a hole pair inside the level-1 region,
    // whatever the offset, so the copy has to move one level further out
    CHECK(find_copy_level(M, box(40, 40, 3, 3)) == 2);

    // extent 7 rules the level-1 region out before validity even matters
    CHECK(find_copy_level(M, box(0, 0, 7, 1)) == 2);

    // extent 37 forces the outermost region
    CHECK(find_copy_level(M, box(0, 0, 37, 1)) == 3);
}

TEST_CASE("copy search rejects broken cell sets") {
    auto M = hat_pi_model(make_template_params(2, 3), 3);
    auto [r1, m1] = oracle::catch_error([&] { find_copy_level(M, {}); });
    CHECK(r1 == errc::bad_input);
    CHECK(oracle::mentions(m1, "empty"));

    auto [r2, m2] = oracle::catch_error([&] { find_copy_level(M, {{2, 2}}); });
    CHECK(r2 == errc::bad_input);
    CHECK(oracle::mentions(m2, "valid"));

    auto [r3, m3] = oracle::catch_error([&] { find_copy_level(M, {{0, 0}, {217, 0}}); });
    CHECK(r3 == errc::bad_input);
}

TEST_CASE("band blocks sit a fixed scaled distance from the footprint boundary") {
    // the nearest band vertex is glued onto the hole rim, one hole offset in
    // from the boundary, and a straight grid column realizes that distance
    const double gap1 = hat_boundary_gap(make_template_params(2, 3), 1, 8);
    CHECK(gap1 == doctest::Approx(12.0).epsilon(1e-9));

    const double gap2 = hat_boundary_gap(make_template_params(2, 3), 2, 8);
    CHECK(gap2 == doctest::Approx(12.0).epsilon(1e-9));

    // (m,k) = (2,5): hole offset 4/10 from the edge, scale factor 100
    const double gap3 = hat_boundary_gap(make_template_params(2, 5), 1, 6);
    CHECK(gap3 == doctest::Approx(40.0).epsilon(1e-9));

    auto [r, msg] = oracle::catch_error([] { hat_boundary_gap(make_template_params(2, 3), 0, 8); });
    CHECK(r == errc::bad_input);
    CHECK(oracle::mentions(msg, "depth"));
}
