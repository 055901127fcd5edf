#include "cdimlab/io.hpp"

#include <cstdio>
#include <sstream>

namespace cdimlab {

namespace {

// fixed 17 significant digits: deterministic bytes and exact round-trips
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double read_double(std::istringstream& in, const char* what) {
    double v = 0.0;
    if (!(in >> v)) fail(errc::bad_input, std::string("truncated space data: expected ") + what);
    return v;
}

}  // namespace

std::string write_space_text(const FiniteMetricSpace& X) {
    std::ostringstream out;
    out << X.size() << "\n";
    if (X.is_coords() && X.coord_metric() == FiniteMetricSpace::Metric::euclidean) {
        const auto& pts = X.coords();
        const std::size_t d = pts.empty() ? 0 : pts.front().size();
        out << "coords " << d << "\n";
        for (const auto& p : pts) {
            for (std::size_t t = 0; t < p.size(); ++t) out << (t ? " " : "") << fmt(p[t]);
            out << "\n";
        }
        return std::move(out).str();
    }
    out << "matrix\n";
    for (PointId i = 0; i < X.size(); ++i) {
        for (PointId j = 0; j < X.size(); ++j) out << (j ? " " : "") << fmt(X.dist(i, j));
        out << "\n";
    }
    return std::move(out).str();
}

FiniteMetricSpace read_space_text(const std::string& text) {
    std::istringstream in(text);
    long long n = -1;
    if (!(in >> n) || n < 0) fail(errc::bad_input, "space data must start with a point count");
    std::string layout;
    if (!(in >> layout)) fail(errc::bad_input, "space data is missing the layout line");

    FiniteMetricSpace X;
    if (layout == "matrix") {
        std::vector<double> mat;
        mat.reserve(static_cast<std::size_t>(n) * n);
        for (long long i = 0; i < n * n; ++i) mat.push_back(read_double(in, "a matrix entry"));
        X = FiniteMetricSpace::from_matrix(static_cast<int>(n), std::move(mat));
    } else if (layout == "coords") {
        long long d = -1;
        if (!(in >> d) || d < 0) fail(errc::bad_input, "coords layout needs a dimension");
        std::vector<std::vector<double>> pts(static_cast<std::size_t>(n));
        for (auto& p : pts) {
            p.reserve(static_cast<std::size_t>(d));
            for (long long t = 0; t < d; ++t) p.push_back(read_double(in, "a coordinate"));
        }
        X = FiniteMetricSpace::from_coords(std::move(pts),
                                           FiniteMetricSpace::Metric::euclidean);
    } else {
        fail(errc::bad_input, "unrecognized space layout '" + layout + "'");
    }

    std::string extra;
    if (in >> extra) fail(errc::bad_input, "trailing data after the space block");
    return X;
}

nlohmann::json stats_json(const CoveringStats& s) {
    nlohmann::json j;
    j["mesh"] = s.mesh;
    j["multiplicity"] = s.multiplicity;
    if (s.lebesgue_infinite)
        j["lebesgue"] = nullptr;
    else
        j["lebesgue"] = s.lebesgue;
    j["lebesgue_infinite"] = s.lebesgue_infinite;
    return j;
}

nlohmann::json covering_json(const Covering& C) {
    nlohmann::json j;
    j["carrier_size"] = C.carrier.size();
    j["member_count"] = C.members.size();
    j["color_count"] = C.colored() ? C.color_count() : 0;
    nlohmann::json sizes = nlohmann::json::array();
    for (const Subset& m : C.members) sizes.push_back(m.size());
    j["member_sizes"] = std::move(sizes);
    return j;
}

nlohmann::json merge_json(const MergeReport& rep) {
    nlohmann::json j;
    j["result"] = covering_json(rep.result);
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [v, u] : rep.absorbed) pairs.push_back({{"from", v}, {"into", u}});
    j["absorbed"] = std::move(pairs);
    return j;
}

nlohmann::json box_count_json(const BoxCountReport& rep) {
    nlohmann::json j;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) rows.push_back({{"epsilon", r.epsilon}, {"count", r.count}});
    j["rows"] = std::move(rows);
    j["fitted_slope"] = rep.fitted_slope;
    j["fit_residual"] = rep.fit_residual;
    return j;
}

nlohmann::json profile_json(const std::vector<CapacityProfileRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"tau", r.tau},
                       {"colors", r.colors},
                       {"best_delta", r.best_delta},
                       {"method", r.method}});
    return arr;
}

nlohmann::json boundary_model_json(const VisualBoundaryModel& M) {
    return {{"b", M.branching}, {"D", M.depth}, {"a", M.a}, {"c", M.c}, {"rho", M.rho}};
}

nlohmann::json complex_audit_json(const SquareComplex& P) {
    nlohmann::json j;
    j["m"] = P.m();
    j["k"] = P.k();
    j["depth"] = P.depth();
    j["g"] = P.g();
    j["faces"] = P.cell_count();
    j["panels"] = P.panels().size();
    j["bands"] = P.bands().size();
    nlohmann::json gens = nlohmann::json::array();
    for (int gen = 1; gen <= P.depth(); ++gen) gens.push_back(P.band_count(gen));
    j["bands_by_generation"] = std::move(gens);
    j["cell_side"] = P.cell_x();
    if (P.has_graph()) {
        j["vertices"] = P.vertex_count();
        j["edges"] = P.graph()->edge_count();
        j["boundary_length"] = P.boundary_length();
    }
    return j;
}

nlohmann::json homothety_json(const QuasiHomothetyReport& rep) {
    nlohmann::json j;
    j["R"] = rep.R;
    j["lambda"] = rep.lambda;
    j["worst"] = {{"a", rep.worst.a},
                  {"b", rep.worst.b},
                  {"source", rep.worst.source},
                  {"image", rep.worst.image}};
    return j;
}

std::string profile_csv(const std::vector<CapacityProfileRow>& rows) {
    std::ostringstream out;
    out << "tau,colors,best_delta,method\n";
    for (const auto& r : rows)
        out << fmt(r.tau) << "," << r.colors << "," << fmt(r.best_delta) << "," << r.method
            << "\n";
    return std::move(out).str();
}

std::string box_count_csv(const BoxCountReport& rep) {
    std::ostringstream out;
    out << "epsilon,count\n";
    for (const auto& r : rep.rows) out << fmt(r.epsilon) << "," << r.count << "\n";
    return std::move(out).str();
}

}  // namespace cdimlab
