#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mop/common.hpp"
#include "mop/curvature.hpp"
#include "mop/families.hpp"
#include "mop/laxpair.hpp"
#include "mop/linalg.hpp"
#include "mop/moments.hpp"
#include "mop/mop_table.hpp"
#include "mop/operators.hpp"
#include "mop/recurrence.hpp"

namespace mop::io {

using nlohmann::json;

// Fixed 17-significant-digit formatting for CSV output.
std::string format_double(double v);

json grid_json(const Grid<double>& g);
Grid<double> grid_from_json(const json& j, Window window, const std::string& name);

json polytable_json(const PolyTable<double>& table);
std::string polytable_csv(const PolyTable<double>& table);

json field_json(const CoeffField<double>& field);
std::string field_csv(const CoeffField<double>& field);
CoeffField<double> field_from_json(const json& j);

struct QabInput {
  Window window;
  Grid<double> q, a, b;
};
QabInput qab_from_json(const json& j);

json curvature_report_json(const CurvatureReport<double>& rep);
json degeneracy_json(const DegeneracyField<double>& deg);
json symmetrizability_json(const SymmetrizabilityReport<double>& rep);
json eigencheck_json(const EigencheckReport<double>& rep);
json normality_json(const NormalityReport<double>& rep);

std::string matrix_csv(const SquareMatrix<double>& a);
json matrix_triplets_json(const SquareMatrix<double>& a);

json wavetable_json(const WaveTable<double>& wave);

json moment_pair_json(const MomentPair<double>& pair);
MomentPair<double> moment_pair_from_json(const json& j);
MomentSequence<double> moments_from_csv(const std::string& text);

FamilySpec family_spec_from_json(const json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace mop::io
