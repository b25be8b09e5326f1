#pragma once

#include <string>

#include <json.hpp>

#include "coslab/cosine_family.hpp"
#include "coslab/complex_matrix.hpp"
#include "coslab/zero_two.hpp"

namespace coslab {

using json = nlohmann::json;

enum class ReportFormat { Json, Csv, Text };

ReportFormat report_format_from_name(const std::string& name); // throws config_error

// Matrix file format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
// Serialization uses shortest round-trip decimals, so finite doubles survive
// a write/read cycle bit-exactly.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j); // throws config_error on malformed input

// Family description files: {"kind": "generator"|"scalar_cos"|"scalar_cosh"|
// "hamel", ...}. Generator carries a matrix payload; scalars carry
// {"a": {"re": .., "im": ..}}; hamel carries b1, xi, mu, nu, func.
json family_to_json(const CosineFamily& f);
CosineFamily family_from_json(const json& j);
CosineFamily load_family_file(const std::string& path);

Matrix load_matrix_file(const std::string& path);
void save_matrix_file(const Matrix& m, const std::string& path);

// Report documents. Every document carries schema_version = 1; the timestamp
// field is omitted when reproducible is set.
json trichotomy_report_to_json(const TrichotomyReport& report, bool reproducible);
json refinement_trace_to_json(const RefinementTrace& trace, bool reproducible);
json contraction_table_to_json(const ContractionSequence& seq, bool reproducible);

std::string render_trichotomy_report(const TrichotomyReport& report, ReportFormat format,
                                     bool reproducible);
std::string render_refinement_trace(const RefinementTrace& trace, ReportFormat format,
                                    bool reproducible);
std::string render_contraction_table(const ContractionSequence& seq, ReportFormat format,
                                     bool reproducible);

} // namespace coslab
