#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdimlab/cover_ops.hpp"
#include "cdimlab/covering.hpp"
#include "cdimlab/metric_space.hpp"
#include "cdimlab/spaces.hpp"
#include "oracles.hpp"

using namespace cdimlab;

namespace {

Subset range_ids(int lo, int hi) {
    Subset out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

Covering cover_of(const FiniteMetricSpace& X, std::vector<Subset> members) {
    Covering C;
    C.carrier = full_carrier(X);
    C.members = std::move(members);
    return C;
}

// every result member sits inside some member of the reference family
bool members_nest_into(const Covering& fine, const Covering& coarse) {
    for (const Subset& w : fine.members) {
        bool housed = false;
        for (const Subset& u : coarse.members)
            if (oracle::is_subset(w, u)) {
                housed = true;
                break;
            }
        if (!housed) return false;
    }
    return true;
}

void check_merge_postconditions(const FiniteMetricSpace& X, const Covering& U,
                                const Covering& V) {
    const CoveringStats su = covering_stats(X, U);
    const CoveringStats sv = covering_stats(X, V);
    REQUIRE(sv.mesh <= su.lebesgue / 2.0);

    MergeReport rep = merge_coverings(X, U, V);
    const CoveringStats sw = covering_stats(X, rep.result);

    CHECK_FALSE(first_uncovered(X, rep.result).has_value());
    CHECK(sw.multiplicity <= std::max(su.multiplicity, sv.multiplicity));
    CHECK(sw.mesh <= std::max(su.mesh, sv.mesh) * (1.0 + kNumSlack));
    CHECK(sw.lebesgue >= std::min(su.lebesgue / 2.0, sv.lebesgue) * (1.0 - kNumSlack));
}

}  // namespace

TEST_CASE("greedy net on the coarse grid") {
    auto X = interval_grid(10);
    CHECK(maximal_separated_net(X, 0.25) == Subset{0, 3, 6, 9});
    // below the minimum spacing every point is kept
    CHECK(maximal_separated_net(X, 0.05) == full_carrier(X));
    // at or above the diameter only the first survives
    CHECK(maximal_separated_net(X, 1.0) == Subset{0});

    auto [k, m] = oracle::catch_error([&] { maximal_separated_net(X, -1.0); });
    CHECK(k == errc::bad_input);
}

TEST_CASE("nets are separated and dominating") {
    rng gen(11);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 60; ++i) pts.push_back({gen.next_double(), gen.next_double()});
        auto X = FiniteMetricSpace::from_coords(std::move(pts),
                                                FiniteMetricSpace::Metric::euclidean);
        double r = 0.1 + 0.3 * gen.next_double();
        Subset net = maximal_separated_net(X, r);
        for (std::size_t i = 0; i < net.size(); ++i)
            for (std::size_t j = i + 1; j < net.size(); ++j) CHECK(X.dist(net[i], net[j]) > r);
        for (int z = 0; z < X.size(); ++z) {
            double best = kInf;
            for (PointId c : net) best = std::min(best, X.dist(z, c));
            CHECK(best <= r);
        }
    }
}

TEST_CASE("doubling covers satisfy the advertised stats") {
    // two far points never conflict
    auto pair = FiniteMetricSpace::from_coords({{0.0}, {10.0}},
                                               FiniteMetricSpace::Metric::euclidean);
    Covering C2 = doubling_colored_cover(pair, 1.0);
    CHECK(C2.members.size() == 2);
    CHECK(C2.color_count() == 1);

    auto check_postconditions = [](const FiniteMetricSpace& X, double r) {
        Covering C = doubling_colored_cover(X, r);
        CoveringStats st = covering_stats(X, C);  // also validates colors
        CHECK(st.mesh <= 4.0 * r);
        CHECK((st.lebesgue_infinite || st.lebesgue >= r));
        // same-color members are positively separated
        for (std::size_t i = 0; i < C.members.size(); ++i)
            for (std::size_t j = i + 1; j < C.members.size(); ++j)
                if (C.colors[i] == C.colors[j])
                    CHECK(set_distance(X, C.members[i], C.members[j]) > 0.0);
    };
    check_postconditions(interval_grid(100), 0.1);
    check_postconditions(cantor_ternary(4).space, std::pow(3.0, -4));

    rng gen(23);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 80; ++i) pts.push_back({gen.next_double(), gen.next_double()});
    check_postconditions(
        FiniteMetricSpace::from_coords(std::move(pts), FiniteMetricSpace::Metric::euclidean),
        0.17);
}

TEST_CASE("merging absorbs the fine cover into the shrunken coarse one") {
    // 0.05-grid; U = {[0,0.6],[0.4,1]}, V = adjacent pairs
    auto X = interval_grid(20);
    Covering U = cover_of(X, {range_ids(0, 12), range_ids(8, 20)});
    std::vector<Subset> pairs;
    for (int i = 0; i < 20; i += 2) pairs.push_back({i, i + 1});
    pairs.push_back({20});
    Covering V = cover_of(X, pairs);

    MergeReport rep = merge_coverings(X, U, V);

    // every V-member meets a shrunken U-member here, so the result keeps
    // exactly the U-shape
    REQUIRE(rep.result.members.size() == 2);
    CHECK(rep.result.members[0] == range_ids(0, 11));
    CHECK(rep.result.members[1] == range_ids(9, 20));
    CHECK(rep.absorbed.size() == V.members.size());
    for (auto [vi, ui] : rep.absorbed) {
        CHECK(oracle::is_subset(V.members[static_cast<std::size_t>(vi)],
                                U.members[static_cast<std::size_t>(ui)]));
    }
    // lowest-index tie-breaking: pairs up to {10,11} land in member 0
    for (auto [vi, ui] : rep.absorbed) CHECK(ui == (vi <= 5 ? 0 : 1));

    check_merge_postconditions(X, U, V);
}

TEST_CASE("a member covering the whole space short-circuits the merge") {
    auto X = interval_grid(10);
    Covering U = cover_of(X, {full_carrier(X)});
    U.carrier = range_ids(0, 5);
    Covering V = cover_of(X, {range_ids(4, 10)});
    V.carrier = range_ids(4, 10);

    MergeReport rep = merge_coverings(X, U, V);
    CHECK(rep.result.members == U.members);
    CHECK(rep.absorbed.empty());
    CHECK(rep.result.carrier == full_carrier(X));  // union of both carriers
}

TEST_CASE("merge refuses a fine cover that is not fine enough") {
    auto X = interval_grid(20);
    Covering U = cover_of(X, {range_ids(0, 12), range_ids(8, 20)});
    Covering V = cover_of(X, {range_ids(0, 10), range_ids(10, 20)});
    auto [k, m] = oracle::catch_error([&] { merge_coverings(X, U, V); });
    CHECK(k == errc::precondition);
    CHECK(oracle::mentions(m, "mesh(V) exceeds L(U)/2"));
}

TEST_CASE("merge postconditions hold across randomized instances") {
    rng gen(37);
    for (int trial = 0; trial < 30; ++trial) {
        FiniteMetricSpace X;
        switch (trial % 3) {
            case 0: X = interval_grid(40 + static_cast<int>(gen.next_below(60))); break;
            case 1: X = cantor_ternary(4 + static_cast<int>(gen.next_below(3))).space; break;
            default: {
                std::vector<std::vector<double>> pts;
                int n = 40 + static_cast<int>(gen.next_below(40));
                for (int i = 0; i < n; ++i)
                    pts.push_back({gen.next_double(), gen.next_double()});
                X = FiniteMetricSpace::from_coords(std::move(pts),
                                                   FiniteMetricSpace::Metric::euclidean);
            }
        }
        double r0 = 0.05 + 0.15 * gen.next_double();
        Covering U = doubling_colored_cover(X, r0);
        U.colors.clear();
        CoveringStats su = covering_stats(X, U);
        // fine balls at L(U)/8 have mesh at most L(U)/2 by construction
        Covering V = doubling_colored_cover(X, su.lebesgue / 8.0);
        V.colors.clear();
        check_merge_postconditions(X, U, V);
    }
}

TEST_CASE("amalgamation walks the scale ladder") {
    auto F = cantor_ternary(6);
    const auto& X = F.space;

    SUBCASE("single family passes through unchanged") {
        Covering only = cover_of(X, F.cylinder_members(2));
        Covering out = amalgamate_colored(X, {only});
        CHECK(out.members == only.members);
    }

    SUBCASE("nested cylinder families merge with controlled stats") {
        Covering a = cover_of(X, F.cylinder_members(1));
        Covering b = cover_of(X, F.cylinder_members(3));
        Covering c = cover_of(X, F.cylinder_members(5));
        std::vector<CoveringStats> st = {covering_stats(X, a), covering_stats(X, b),
                                         covering_stats(X, c)};

        Covering out = amalgamate_colored(X, {a, b, c});
        CoveringStats so = covering_stats(X, out);
        CHECK_FALSE(first_uncovered(X, out).has_value());
        CHECK(so.multiplicity <= 1);  // all three families are disjoint tilings
        CHECK(so.mesh <= st[0].mesh * (1.0 + kNumSlack));
        double bound = kInf;
        for (int i = 0; i < 3; ++i)
            bound = std::min(bound, std::pow(2.0, i - 2) * st[static_cast<std::size_t>(i)].lebesgue);
        CHECK(so.lebesgue >= bound * (1.0 - kNumSlack));

        // determinism: the same input produces the same member sets
        Covering again = amalgamate_colored(X, {a, b, c});
        CHECK(again.members == out.members);
    }

    SUBCASE("a family violating the ladder is reported by index") {
        Covering a = cover_of(X, F.cylinder_members(2));
        Covering b = cover_of(X, F.cylinder_members(2));
        auto [k, m] = oracle::catch_error([&] { amalgamate_colored(X, {a, b}); });
        CHECK(k == errc::precondition);
        CHECK(oracle::mentions(m, "ladder fails at family 0"));
    }

    SUBCASE("empty input is rejected") {
        auto [k, m] = oracle::catch_error([&] { amalgamate_colored(X, {}); });
        CHECK(k == errc::bad_input);
    }
}

TEST_CASE("identity refinement reproduces the model ladder's scale") {
    auto Z = interval_grid(100);
    Covering V = doubling_colored_cover(Z, 0.1);
    CoveringStats sv = covering_stats(Z, V);
    const double delta = sv.lebesgue;
    const int nc = V.color_count();
    REQUIRE(nc >= 2);

    // model ladder on the same space: scale falls by 8 per color
    std::vector<Covering> models;
    std::vector<CoveringStats> ms;
    double rho = delta / 8.0;
    for (int a = 0; a < nc; ++a) {
        models.push_back(doubling_colored_cover(Z, rho));
        models.back().colors.clear();
        ms.push_back(covering_stats(Z, models.back()));
        rho /= 8.0;
    }

    QuasiHomothetyProvider provider;
    provider.lambda = 1.0;
    provider.map_for = [](const Subset& member, double) { return member; };

    ScaleParams params;
    params.tau = 1.0;
    params.delta = delta;

    Covering out = refine_via_selfsimilarity(Z, V, Z, models, provider, params);
    CoveringStats so = covering_stats(Z, out);

    CHECK_FALSE(first_uncovered(Z, out).has_value());
    int max_model_mult = 0;
    for (const auto& s : ms) max_model_mult = std::max(max_model_mult, s.multiplicity);
    CHECK(so.multiplicity <= max_model_mult);
    CHECK(so.mesh <= delta * params.tau / 2.0 * (1.0 + kNumSlack));
    double l = kInf;
    for (int a = 0; a < nc; ++a)
        l = std::min(l, std::pow(2.0, a - (nc - 1)) * ms[static_cast<std::size_t>(a)].lebesgue);
    CHECK(so.lebesgue >= l * params.tau * (1.0 - 1e-9));

    // containment audit: each output member lives inside one V-member
    CHECK(members_nest_into(out, V));

    SUBCASE("model cover count must match the coloring") {
        std::vector<Covering> short_list(models.begin(), models.end() - 1);
        auto [k, m] =
            oracle::catch_error([&] { refine_via_selfsimilarity(Z, V, Z, short_list, provider, params); });
        CHECK(k == errc::bad_input);
        CHECK(oracle::mentions(m, "one model cover per color"));
    }

    SUBCASE("a distorting provider is caught") {
        QuasiHomothetyProvider bad = provider;
        bad.map_for = [&Z](const Subset& member, double) {
            std::vector<PointId> im(member.size(), 0);  // collapse to a point
            return im;
        };
        auto [k, m] =
            oracle::catch_error([&] { refine_via_selfsimilarity(Z, V, Z, models, bad, params); });
        CHECK(k == errc::precondition);
        CHECK(oracle::mentions(m, "not a quasi-homothety"));
    }
}

TEST_CASE("pushforward through a surjective isometry is the plain image") {
    auto X = interval_grid(30);
    Covering U = doubling_colored_cover(X, 0.12);
    U.colors.clear();

    SampledMap h;
    h.domain = full_carrier(X);
    // reverse the interval: an isometry of the grid onto itself
    for (PointId p : h.domain) h.image.push_back(30 - p);

    PushforwardReport rep = pushforward_cover(X, U, X, h, 0.0);
    REQUIRE(rep.result.members.size() == U.members.size());
    for (std::size_t m = 0; m < U.members.size(); ++m) {
        Subset expect;
        for (PointId p : U.members[m]) expect.push_back(30 - p);
        std::sort(expect.begin(), expect.end());
        CHECK(rep.result.members[m] == expect);
        CHECK(rep.source_member[m] == static_cast<int>(m));
    }
}

TEST_CASE("pushforward carries a deep piece onto the unit grid") {
    // rescaling a round-4 piece of the slowly thinning construction nearly
    // fills [0,1]: its widest internal gap is 1/7 of its length, so the
    // scaled-up image is 0.074-dense on a 1000-cell grid
    auto F = cantor_slow(11);
    Subset piece = F.interval_points(4, 0);  // ids 0..255
    REQUIRE(piece == range_ids(0, 255));
    const double plen = F.piece_len[4];

    // two interval members overlapping across the central gap; in rescaled
    // coordinates A = [0, 0.759], B = [0.241, 1], which keeps the subspace
    // Lebesgue number near 0.384
    Covering U;
    U.carrier = piece;
    U.members = {range_ids(0, 191), range_ids(64, 255)};

    const int G = 1000;
    auto Y = interval_grid(G);
    SampledMap h;
    h.domain = piece;
    for (PointId p : piece) {
        double pos = F.space.coords()[static_cast<std::size_t>(p)][0] / plen;
        h.image.push_back(static_cast<PointId>(std::lround(pos * G)));
    }

    const double eps = 0.074;
    PushforwardReport rep = pushforward_cover(F.space, U, Y, h, eps);
    CoveringStats so = covering_stats(Y, rep.result);

    CHECK_FALSE(first_uncovered(Y, rep.result).has_value());
    CHECK(so.multiplicity <= 2);
    // member images span at most 0.759 before shrink/enlarge cancel out
    CHECK(so.mesh <= 0.76 + 1e-9);
    REQUIRE(rep.result.members.size() == 2);
    CHECK(rep.source_member == std::vector<int>{0, 1});
}

TEST_CASE("pushforward carries the reciprocal tail onto the unit grid") {
    auto X = reciprocal_product(1, 50);
    // tail {0} u {1/m : 5 <= m <= 50}, ids ascending by value; scaled by 5
    // it lands 0.09-densely on a 50-cell grid (worst gap midpoint is 0.08,
    // halfway between the images of 1/6 and 1/5)
    Subset tail = range_ids(0, 46);

    Covering U;
    U.carrier = tail;
    // near-full overlap: only the extreme points are left out, which keeps
    // the image covering's Lebesgue number at 0.5
    U.members = {range_ids(0, 45), range_ids(1, 46)};

    const int G = 50;
    auto Y = interval_grid(G);
    SampledMap h;
    h.domain = tail;
    for (PointId p : tail) {
        double pos = X.coords()[static_cast<std::size_t>(p)][0] * 5.0;
        h.image.push_back(static_cast<PointId>(std::lround(pos * G)));
    }

    const double eps = 0.09;
    PushforwardReport rep = pushforward_cover(X, U, Y, h, eps);
    CoveringStats so = covering_stats(Y, rep.result);

    CHECK_FALSE(first_uncovered(Y, rep.result).has_value());
    CHECK(so.multiplicity <= 2);
    CHECK(so.mesh <= 0.9);
}

TEST_CASE("pushforward rejects sparse images and thin coverings") {
    auto X = interval_grid(10);
    auto Y = interval_grid(100);
    SampledMap h;
    h.domain = full_carrier(X);
    for (PointId p : h.domain) h.image.push_back(10 * p);

    Covering U = cover_of(X, {full_carrier(X)});

    // the image is only 0.1-dense, so eps = 0.01 leaves isolated points
    auto [k1, m1] = oracle::catch_error([&] { pushforward_cover(X, U, Y, h, 0.01); });
    CHECK(k1 == errc::precondition);
    CHECK(oracle::mentions(m1, "not eps-dense"));

    // two-member cover with subspace Lebesgue number 0.1 < 4 * 0.06
    Covering thin = cover_of(X, {range_ids(0, 5), range_ids(5, 10)});
    auto [k2, m2] = oracle::catch_error([&] { pushforward_cover(X, thin, Y, h, 0.06); });
    CHECK(k2 == errc::precondition);
    CHECK(oracle::mentions(m2, "below 4*eps"));
}
