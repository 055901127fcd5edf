#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "cdimlab/common.hpp"
#include "cdimlab/io.hpp"
#include "cdimlab/spaces.hpp"
#include "oracles.hpp"

using namespace cdimlab;

TEST_CASE("matrix spaces round-trip through the text format") {
    auto X = balanced_tree(2, 3);
    const std::string text = write_space_text(X);
    CHECK(text.substr(0, text.find('\n')) == "15");
    CHECK(text.find("matrix\n") != std::string::npos);

    auto Y = read_space_text(text);
    REQUIRE(Y.size() == X.size());
    for (PointId i = 0; i < X.size(); ++i)
        for (PointId j = 0; j < X.size(); ++j) CHECK(Y.dist(i, j) == X.dist(i, j));

    // writing the parse again is byte identical
    CHECK(write_space_text(Y) == text);
}

TEST_CASE("coordinate spaces keep their layout and exact values") {
    auto X = FiniteMetricSpace::from_coords({{0.0, 0.1}, {1.0 / 3.0, 2.0}, {0.7, -4.25}},
                                            FiniteMetricSpace::Metric::euclidean);
    const std::string text = write_space_text(X);
    CHECK(text.find("coords 2") != std::string::npos);

    auto Y = read_space_text(text);
    REQUIRE(Y.is_coords());
    REQUIRE(Y.size() == 3);
    for (PointId i = 0; i < 3; ++i)
        for (std::size_t t = 0; t < 2; ++t) CHECK(Y.coords()[i][t] == X.coords()[i][t]);

    // sup-metric coordinates fall back to an explicit matrix
    auto S = FiniteMetricSpace::from_coords({{0.0}, {1.0}}, FiniteMetricSpace::Metric::sup);
    CHECK(write_space_text(S).find("matrix") != std::string::npos);
}

TEST_CASE("malformed space text is rejected with a reason") {
    auto [r1, m1] = oracle::catch_error([] { read_space_text("not-a-count\nmatrix\n"); });
    CHECK(r1 == errc::bad_input);
    CHECK(oracle::mentions(m1, "count"));

    auto [r2, m2] = oracle::catch_error([] { read_space_text("2\nrows\n0 1\n1 0\n"); });
    CHECK(r2 == errc::bad_input);
    CHECK(oracle::mentions(m2, "layout"));

    auto [r3, m3] = oracle::catch_error([] { read_space_text("2\nmatrix\n0 1 1\n"); });
    CHECK(r3 == errc::bad_input);
    CHECK(oracle::mentions(m3, "truncated"));

    auto [r4, m4] = oracle::catch_error([] { read_space_text("1\nmatrix\n0\nleftover\n"); });
    CHECK(r4 == errc::bad_input);
    CHECK(oracle::mentions(m4, "trailing"));

    // the matrix validators still run on parsed data
    auto [r5, m5] = oracle::catch_error([] { read_space_text("2\nmatrix\n0 1\n2 0\n"); });
    CHECK(r5 == errc::bad_input);
    CHECK(oracle::mentions(m5, "symmetric"));
}

TEST_CASE("stats serialize with an explicit infinity marker") {
    CoveringStats s;
    s.mesh = 0.25;
    s.multiplicity = 3;
    s.lebesgue = 0.125;
    auto j = stats_json(s);
    CHECK(j["mesh"] == 0.25);
    CHECK(j["multiplicity"] == 3);
    CHECK(j["lebesgue"] == 0.125);
    CHECK(j["lebesgue_infinite"] == false);

    s.lebesgue_infinite = true;
    auto inf = stats_json(s);
    CHECK(inf["lebesgue"].is_null());
    CHECK(inf["lebesgue_infinite"] == true);
}

TEST_CASE("reports serialize their defining fields") {
    Covering C;
    C.carrier = {0, 1, 2};
    C.members = {{0, 1}, {1, 2}};
    C.colors = {0, 1};
    auto cj = covering_json(C);
    CHECK(cj["member_count"] == 2);
    CHECK(cj["color_count"] == 2);
    CHECK(cj["member_sizes"] == nlohmann::json({2, 2}));

    BoxCountReport b;
    b.rows = {{0.5, 3}, {0.05, 21}};
    b.fitted_slope = 0.845;
    auto bj = box_count_json(b);
    CHECK(bj["rows"].size() == 2);
    CHECK(bj["rows"][1]["count"] == 21);
    CHECK(bj["fitted_slope"] == 0.845);

    auto mj = boundary_model_json(make_boundary_model(3, 5, 2.0, 1.5, 0.25));
    CHECK(mj["b"] == 3);
    CHECK(mj["D"] == 5);
    CHECK(mj["a"] == 2.0);
    CHECK(mj["c"] == 1.5);
    CHECK(mj["rho"] == 0.25);

    QuasiHomothetyReport q;
    q.R = 6.0;
    q.lambda = 1.03;
    q.worst = {4, 9, 0.5, 3.1};
    auto qj = homothety_json(q);
    CHECK(qj["lambda"] == 1.03);
    CHECK(qj["worst"]["b"] == 9);
}

TEST_CASE("the complex audit carries the block counts") {
    auto P = build_template(make_template_params(2, 3), 1, 4);
    auto j = complex_audit_json(P);
    CHECK(j["faces"] == 48);
    CHECK(j["panels"] == 3);
    CHECK(j["bands"] == 1);
    CHECK(j["bands_by_generation"] == nlohmann::json({1}));
    CHECK(j["vertices"].is_number());
    CHECK(j["edges"].is_number());
}

TEST_CASE("csv tables are stable and carry headers") {
    std::vector<CapacityProfileRow> rows;
    rows.push_back({0.25, 1, 0.5, "ball"});
    rows.push_back({0.25, 2, 1.0, "cylinder"});
    const std::string csv = profile_csv(rows);
    CHECK(csv == "tau,colors,best_delta,method\n0.25,1,0.5,ball\n0.25,2,1,cylinder\n");

    BoxCountReport b;
    b.rows = {{0.5, 3}, {0.0625, 21}};
    CHECK(box_count_csv(b) == "epsilon,count\n0.5,3\n0.0625,21\n");

    // repeated serialization is byte identical
    CHECK(profile_csv(rows) == csv);
}
