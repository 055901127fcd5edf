#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cdimlab/cone.hpp"
#include "cdimlab/cover_ops.hpp"
#include "cdimlab/estimators.hpp"
#include "cdimlab/square_complex.hpp"

namespace cdimlab {

// Text interchange for finite spaces: a count line, a layout line, then one
// row per point. Euclidean coordinate spaces round-trip as `coords d`,
// everything else is written as an explicit `matrix`.
std::string write_space_text(const FiniteMetricSpace& X);
FiniteMetricSpace read_space_text(const std::string& text);

nlohmann::json stats_json(const CoveringStats& s);
nlohmann::json covering_json(const Covering& C);
nlohmann::json merge_json(const MergeReport& rep);
nlohmann::json box_count_json(const BoxCountReport& rep);
nlohmann::json profile_json(const std::vector<CapacityProfileRow>& rows);
nlohmann::json boundary_model_json(const VisualBoundaryModel& M);
nlohmann::json complex_audit_json(const SquareComplex& P);
nlohmann::json homothety_json(const QuasiHomothetyReport& rep);

// plot-ready tables, LF line endings
std::string profile_csv(const std::vector<CapacityProfileRow>& rows);
std::string box_count_csv(const BoxCountReport& rep);

}  // namespace cdimlab
