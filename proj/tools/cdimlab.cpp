#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdimlab/block_model.hpp"
#include "cdimlab/cone.hpp"
#include "cdimlab/cover_ops.hpp"
#include "cdimlab/estimators.hpp"
#include "cdimlab/hyperbolicity.hpp"
#include "cdimlab/inverse_limit.hpp"
#include "cdimlab/io.hpp"
#include "cdimlab/spaces.hpp"

using namespace cdimlab;
using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";

// every flag the tool understands, shared across subcommands
struct Options {
    int m = 2, k = 3, depth = 1, g = 8;
    std::vector<double> tau_grid, r_grid;
    int colors = 1;
    int n = 8;
    int mmax = 30;
    int branching = 2;
    std::uint64_t seed = 1;
    long long cap = 0;
    std::string in, out, format = "json", kind, op = "net", exportpath;
    double tmax = 16.0, tstep = 0.25;
    std::vector<int> contract;
    bool audit = false, diameter = false, lambda = false;
    int limit_pairs = 0;
};

caps effective_caps(const Options& o) {
    caps c = caps::from_env();
    if (o.cap > 0) {
        c.matrix_cache = static_cast<int>(std::min<long long>(o.cap, 1 << 30));
        c.hyperbolicity_scan = c.matrix_cache;
        c.space_points = c.matrix_cache;
    }
    return c;
}

void emit(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(errc::bad_input, "cannot open output file '" + path + "'");
    f << data;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::bad_input, "cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return std::move(buf).str();
}

json config_json(const Options& o, const std::string& command) {
    json c;
    c["command"] = command;
    c["m"] = o.m;
    c["k"] = o.k;
    c["depth"] = o.depth;
    c["g"] = o.g;
    c["seed"] = o.seed;
    if (!o.kind.empty()) c["kind"] = o.kind;
    if (!o.in.empty()) c["in"] = o.in;
    if (!o.tau_grid.empty()) c["tau_grid"] = o.tau_grid;
    if (!o.r_grid.empty()) c["r_grid"] = o.r_grid;
    if (o.colors != 1) c["colors"] = o.colors;
    if (o.cap > 0) c["cap"] = o.cap;
    return c;
}

std::string envelope(const Options& o, const std::string& command, json report) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = config_json(o, command);
    j["report"] = std::move(report);
    return j.dump(2) + "\n";
}

// gallery construction shared by several subcommands; cantor kinds also
// return the interval family so cylinder cover sources can be formed
struct LoadedSpace {
    FiniteMetricSpace space;
    CantorFamily family;  // depth < 0 when absent
    bool has_family = false;
};

LoadedSpace gallery_space(const Options& o, const caps& limits) {
    LoadedSpace L;
    if (o.kind == "ternary") {
        L.family = cantor_ternary(o.depth, limits);
        L.space = L.family.space;
        L.has_family = true;
    } else if (o.kind == "slow") {
        L.family = cantor_slow(o.depth, limits);
        L.space = L.family.space;
        L.has_family = true;
    } else if (o.kind == "interval") {
        L.space = interval_grid(o.n);
    } else if (o.kind == "circle") {
        L.space = circle_sample(o.n);
    } else if (o.kind == "reciprocal") {
        L.space = reciprocal_product(o.n, o.mmax, limits);
    } else if (o.kind == "tree") {
        L.space = balanced_tree(o.branching, o.depth, limits);
    } else {
        fail(errc::bad_input, "unknown space kind '" + o.kind + "'");
    }
    return L;
}

LoadedSpace resolve_space(const Options& o, const caps& limits) {
    if (!o.in.empty() && !o.kind.empty())
        fail(errc::bad_input, "give either --in or --kind, not both");
    if (!o.in.empty()) {
        LoadedSpace L;
        L.space = read_space_text(slurp(o.in));
        return L;
    }
    if (o.kind.empty()) fail(errc::bad_input, "need a space: pass --in FILE or --kind NAME");
    return gallery_space(o, limits);
}

std::vector<CoverSource> family_sources(const LoadedSpace& L) {
    std::vector<CoverSource> sources;
    if (!L.has_family) return sources;
    const CantorFamily* F = &L.family;
    sources.push_back([F](double tau) {
        std::vector<CandidateCover> out;
        for (int r = 0; r <= F->depth; ++r) {
            if (F->piece_len[static_cast<std::size_t>(r)] > tau * (1.0 + kNumSlack)) continue;
            CandidateCover c;
            c.method = "cylinder";
            c.cover.carrier = full_carrier(F->space);
            c.cover.members = F->cylinder_members(r);
            out.push_back(std::move(c));
            break;
        }
        return out;
    });
    return sources;
}

int cmd_space(const Options& o) {
    const caps limits = effective_caps(o);
    if (o.kind.empty()) fail(errc::bad_input, "space generation needs --kind");
    emit(o.out, write_space_text(gallery_space(o, limits).space));
    return 0;
}

int cmd_cover(const Options& o) {
    const caps limits = effective_caps(o);
    auto L = resolve_space(o, limits);
    if (o.r_grid.empty()) fail(errc::bad_input, "cover pipelines need --r-grid");

    json rep;
    rep["op"] = o.op;
    if (o.op == "net") {
        Covering C = doubling_colored_cover(L.space, o.r_grid[0]);
        rep["cover"] = covering_json(C);
        rep["stats"] = stats_json(covering_stats(L.space, C));
    } else if (o.op == "merge") {
        if (o.r_grid.size() < 2) fail(errc::bad_input, "merge needs two radii in --r-grid");
        Covering U = doubling_colored_cover(L.space, o.r_grid[0]);
        Covering V = doubling_colored_cover(L.space, o.r_grid[1]);
        MergeReport M = merge_coverings(L.space, U, V);
        rep["merge"] = merge_json(M);
        rep["stats"] = stats_json(covering_stats(L.space, M.result));
    } else if (o.op == "amalgamate") {
        std::vector<Covering> ladder;
        for (double r : o.r_grid) ladder.push_back(doubling_colored_cover(L.space, r));
        Covering C = amalgamate_colored(L.space, ladder);
        rep["cover"] = covering_json(C);
        rep["stats"] = stats_json(covering_stats(L.space, C));
    } else {
        fail(errc::bad_input, "unknown cover op '" + o.op + "'");
    }
    emit(o.out, envelope(o, "cover", std::move(rep)));
    return 0;
}

int cmd_profile(const Options& o) {
    const caps limits = effective_caps(o);
    auto L = resolve_space(o, limits);
    if (o.tau_grid.empty()) fail(errc::bad_input, "profiles need --tau-grid");
    auto rows = capacity_profile(L.space, o.tau_grid, o.colors, family_sources(L));
    if (o.format == "csv")
        emit(o.out, profile_csv(rows));
    else
        emit(o.out, envelope(o, "profile", profile_json(rows)));
    return 0;
}

int cmd_boxcount(const Options& o) {
    const caps limits = effective_caps(o);
    auto L = resolve_space(o, limits);
    if (o.tau_grid.empty()) fail(errc::bad_input, "box counting needs --tau-grid");
    auto rep = box_counting(L.space, o.tau_grid);
    if (o.format == "csv")
        emit(o.out, box_count_csv(rep));
    else
        emit(o.out, envelope(o, "boxcount", box_count_json(rep)));
    return 0;
}

int cmd_complex(Options o) {
    const caps limits = effective_caps(o);
    const auto params = make_template_params(o.m, o.k);
    const bool metric_needed = o.diameter || o.limit_pairs > 0;
    if (!o.audit && !o.diameter && !o.lambda && o.limit_pairs == 0) o.audit = true;

    json rep;
    if (o.audit || o.diameter) {
        auto P = build_template(params, o.depth, o.g, metric_needed, limits);
        if (o.audit) rep["audit"] = complex_audit_json(P);
        if (o.diameter) {
            auto b = P.diameter_bounds();
            rep["diameter"] = {{"lower", b.lower}, {"upper", b.upper}};
        }
    }
    if (o.limit_pairs > 0) {
        auto tw = build_tower(params, o.depth, o.g, true, limits);
        rng gen(o.seed);
        const auto& deepest = tw.level(tw.depth());
        json rows = json::array();
        for (int it = 0; it < o.limit_pairs; ++it) {
            const auto p = deepest.random_point(gen);
            const auto q = deepest.random_point(gen);
            rows.push_back(limit_distance(tw, p, q));
        }
        rep["limit_distance"] = std::move(rows);
    }
    if (o.lambda) {
        if (o.depth < 1) fail(errc::bad_input, "lambda reports need --depth at least 1");
        auto tw = build_tower(params, o.depth, o.g, true, limits);
        rng gen(o.seed);
        const double R = 1.0 / params.km();
        json letters = json::array();
        double worst = 1.0;
        for (int letter = 0; letter < params.s(); ++letter) {
            std::vector<DistancePair> pairs;
            while (pairs.size() < 10) {
                const auto p = tw.level(0).random_point(gen);
                const auto q = tw.level(0).random_point(gen);
                const double d = tw.level(0).distance(p, q);
                if (d < 0.5) continue;  // stay clear of grid snap noise
                DistancePair dp;
                dp.a = static_cast<int>(pairs.size());
                dp.b = dp.a;
                dp.source = d;
                dp.image = tw.level(1).distance(selfsimilarity_map(tw, letter, 0, p),
                                                selfsimilarity_map(tw, letter, 0, q));
                pairs.push_back(dp);
            }
            auto hrep = quasi_homothety_coefficient(pairs, R);
            worst = std::max(worst, hrep.lambda);
            json entry = homothety_json(hrep);
            entry["letter"] = letter;
            letters.push_back(std::move(entry));
        }
        rep["lambda"] = {{"R", R}, {"worst", worst}, {"letters", std::move(letters)}};
    }
    emit(o.out, envelope(o, "complex", std::move(rep)));
    return 0;
}

int cmd_cone(const Options& o) {
    const caps limits = effective_caps(o);
    auto S = sample_cone(circle_sample(o.n), o.tmax, o.tstep, limits);
    if (!o.exportpath.empty()) emit(o.exportpath, write_space_text(S.space));

    json rep;
    rep["mu"] = S.cone.mu;
    rep["points"] = S.points.size();
    rep["annulus_size"] = S.annulus.size();
    if (!o.contract.empty()) {
        // one fixed-radius ball cover of the whole sample, then each shell
        Covering U;
        U.carrier = full_carrier(S.space);
        std::vector<char> covered(S.points.size(), 0);
        for (PointId i = 0; i < S.space.size(); ++i) {
            if (covered[static_cast<std::size_t>(i)]) continue;
            Subset ball;
            const auto& row = S.space.dist_row(i);
            for (PointId j = 0; j < S.space.size(); ++j)
                if (row[j] <= 1.0) {
                    ball.push_back(j);
                    covered[static_cast<std::size_t>(j)] = 1;
                }
            U.members.push_back(std::move(ball));
        }
        json shells = json::array();
        for (int k : o.contract) {
            auto A = annulus_contract(S, U, k);
            json row = stats_json(A.stats);
            row["k"] = k;
            row["members"] = A.restricted.members.size();
            shells.push_back(std::move(row));
        }
        rep["contractions"] = std::move(shells);
    }
    emit(o.out, envelope(o, "cone", std::move(rep)));
    return 0;
}

int cmd_hyperbolicity(const Options& o) {
    const caps limits = effective_caps(o);
    auto L = resolve_space(o, limits);
    auto rep = delta_hyperbolicity(L.space, limits);
    json j;
    j["delta"] = rep.delta;
    j["witness"] = rep.witness;
    emit(o.out, envelope(o, "hyperbolicity", std::move(j)));
    return 0;
}

// small curated invariant sweep; each entry prints one line
int cmd_check(const Options& o) {
    const caps limits = effective_caps(o);
    int failed = 0;
    auto run = [&](const std::string& name, auto&& body) {
        try {
            body();
            std::cout << "ok      " << name << "\n";
        } catch (const std::exception& e) {
            ++failed;
            std::cout << "FAIL    " << name << ": " << e.what() << "\n";
        }
    };
    auto expect = [](bool cond, const std::string& what) {
        if (!cond) fail(errc::internal, what);
    };

    run("block count formulas", [&] {
        expect(make_template_params(2, 3).s() == 48, "s(2,3) != 48");
        expect(make_template_params(2, 5).s() == 112, "s(2,5) != 112");
        expect(make_template_params(3, 3).s() == 108, "s(3,3) != 108");
    });
    run("depth one template audit", [&] {
        auto P = build_template(make_template_params(2, 3), 1, 4, false, limits);
        expect(P.cell_count() == 48, "face count");
        expect(P.panels().size() == 3, "panel count");
        expect(P.band_count(1) == 1, "band count");
    });
    run("band boundary lengths", [&] {
        auto B = build_band(2, 2.0, 1.0, 4, limits);
        expect(B.boundary_length() == 4.0, "free boundary length");
        expect(std::abs(B.distance({0, 1.0, 0.0}, {1, 1.0, 0.0})) < 1e-12,
               "singular side gluing");
    });
    run("merge keeps coverage and clearance", [&] {
        auto F = cantor_ternary(5, limits);
        auto U = doubling_colored_cover(F.space, 0.05);
        auto V = doubling_colored_cover(F.space, 0.002);
        auto su = covering_stats(F.space, U);
        auto sv = covering_stats(F.space, V);
        auto M = merge_coverings(F.space, U, V);
        auto sm = covering_stats(F.space, M.result);
        expect(sm.mesh <= std::max(su.mesh, sv.mesh) + 1e-12, "mesh grew");
        expect(sm.multiplicity <= std::max(su.multiplicity, sv.multiplicity),
               "multiplicity grew");
        expect(sm.lebesgue >= std::min(su.lebesgue / 2.0, sv.lebesgue) - 1e-12,
               "clearance lost");
    });
    run("cone law of cosines identities", [&] {
        auto path = FiniteMetricSpace::from_matrix(3, {0, 1, 2, 1, 0, 1, 2, 1, 0});
        auto C = make_cone(path);
        expect(std::abs(cone_distance(C, {0, 1.0}, {1, 1.0}) - 1.513374006596504) < 1e-12,
               "right angle value");
        rng gen(o.seed);
        for (int it = 0; it < 200; ++it) {
            ConePoint x{static_cast<PointId>(gen.next_below(3)), 3.0 * gen.next_double()};
            ConePoint y{static_cast<PointId>(gen.next_below(3)), 3.0 * gen.next_double()};
            ConePoint w{static_cast<PointId>(gen.next_below(3)), 3.0 * gen.next_double()};
            expect(cone_distance(C, x, y) <=
                       cone_distance(C, x, w) + cone_distance(C, w, y) + 1e-9,
                   "triangle inequality");
        }
    });
    run("tree boundary is an ultrametric", [&] {
        auto M = make_boundary_model(2, 8, 2.0, 1.0, 0.0);
        rng gen(o.seed);
        for (int it = 0; it < 500; ++it) {
            const auto x = static_cast<long long>(gen.next_below(256));
            const auto y = static_cast<long long>(gen.next_below(256));
            const auto z = static_cast<long long>(gen.next_below(256));
            expect(visual_distance(M, x, z) <=
                       std::max(visual_distance(M, x, y), visual_distance(M, y, z)),
                   "ultrametric inequality");
        }
    });
    run("ternary box dimension", [&] {
        auto F = cantor_ternary(6, limits);
        std::vector<double> scales;
        for (int r = 2; r <= 5; ++r) scales.push_back(F.piece_len[static_cast<std::size_t>(r)]);
        const double slope = box_counting(F.space, scales).fitted_slope;
        expect(std::abs(slope - std::log(2.0) / std::log(3.0)) < 0.1, "slope off");
    });
    run("copy relocation bound", [&] {
        auto M = hat_pi_model(make_template_params(2, 3), 3, limits);
        std::vector<HatCell> cells;
        for (long long x = 40; x < 43; ++x)
            for (long long y = 40; y < 43; ++y) cells.push_back({x, y});
        expect(find_copy_level(M, cells) == 2, "solid block level");
    });

    std::cout << (failed == 0 ? "all checks passed\n"
                              : std::to_string(failed) + " check(s) failed\n");
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite metric geometry laboratory"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--m", o.m, "band multiplicity");
        cmd->add_option("--k", o.k, "grid parameter (odd, >= 3)");
        cmd->add_option("--depth", o.depth, "construction depth");
        cmd->add_option("--g", o.g, "grid cells per block side");
        cmd->add_option("--tau-grid", o.tau_grid, "comma separated scale list")
            ->delimiter(',');
        cmd->add_option("--r-grid", o.r_grid, "comma separated radius list")->delimiter(',');
        cmd->add_option("--colors", o.colors, "color budget");
        cmd->add_option("--seed", o.seed, "random seed");
        cmd->add_option("--cap", o.cap, "override the point-sample caps");
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--in", o.in, "input space file");
        cmd->add_option("--kind", o.kind,
                        "gallery space: ternary slow interval circle reciprocal tree");
        cmd->add_option("--n", o.n, "point or cell count for gallery spaces");
        cmd->add_option("--mmax", o.mmax, "largest reciprocal denominator");
        cmd->add_option("--branching", o.branching, "tree branching");
        return cmd;
    };

    auto* space = add_common(app.add_subcommand("space", "generate a gallery space"));
    auto* cover = add_common(app.add_subcommand("cover", "covering pipelines"));
    cover->add_option("--op", o.op, "net, merge, or amalgamate");
    auto* profile = add_common(app.add_subcommand("profile", "capacity profiles"));
    auto* boxcount = add_common(app.add_subcommand("boxcount", "box counting"));
    auto* complex = add_common(app.add_subcommand("complex", "self-similar square complexes"));
    complex->add_flag("--audit", o.audit, "block and vertex counts");
    complex->add_flag("--diameter", o.diameter, "metric diameter bounds");
    complex->add_flag("--lambda", o.lambda, "block homothety coefficients");
    complex->add_option("--limit-pairs", o.limit_pairs, "limit distance sequences");
    auto* cone = add_common(app.add_subcommand("cone", "hyperbolic cone samples"));
    cone->add_option("--tmax", o.tmax, "largest radius");
    cone->add_option("--tstep", o.tstep, "radius step");
    cone->add_option("--contract", o.contract, "annulus contraction factors")->delimiter(',');
    cone->add_option("--export", o.exportpath, "write the sample space text here");
    auto* hyp = add_common(app.add_subcommand("hyperbolicity", "four point delta scan"));
    auto* check = add_common(app.add_subcommand("check", "run the invariant suite"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (space->parsed()) return cmd_space(o);
        if (cover->parsed()) return cmd_cover(o);
        if (profile->parsed()) return cmd_profile(o);
        if (boxcount->parsed()) return cmd_boxcount(o);
        if (complex->parsed()) return cmd_complex(o);
        if (cone->parsed()) return cmd_cone(o);
        if (hyp->parsed()) return cmd_hyperbolicity(o);
        if (check->parsed()) return cmd_check(o);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case errc::cap_exceeded: return 3;
            case errc::bad_input: return 4;
            case errc::precondition: return 5;
            case errc::internal: return 6;
        }
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    return 2;
}
