#pragma once

#include <string>

#include <json.hpp>

#include "coreep/continuity.hpp"
#include "coreep/geninv.hpp"
#include "coreep/linalg.hpp"
#include "coreep/perturbation.hpp"
#include "coreep/semistable.hpp"

namespace coreep {

using Json = nlohmann::json;

/// Matrix wire format: {"rows": int, "cols": int, "data": [[re, im], ...]}
/// row-major; a bare number is accepted for a real entry. All entries must be
/// finite. Throws ParseError.
Matrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

Matrix load_matrix(const std::string& path);

Json inverse_result_to_json(const InverseResult& r);
Json bound_report_to_json(const BoundReport& r);
Json condition_profile_to_json(const ConditionProfile& p);
Json continuity_verdict_to_json(const ContinuityVerdict& v);
Json stability_verdict_to_json(const StabilityVerdict& v);

/// {"t_max": real|"auto", "panels": int|"auto", "gl_order": int,
///  "target_rel_error": real} — all keys optional.
QuadratureConfig quadrature_config_from_json(const Json& j);

/// Sequence config, either explicit terms
///   {"limit": matrix, "terms": [{"j": int, "matrix": matrix}, ...]}
/// or a template whose entries may be the string "1/j"
///   {"limit": matrix, "template": matrix, "symbol_value": "1/j",
///    "j_values": [ints]}.
MatrixSequence sequence_from_json(const Json& j);

/// Finite doubles serialize as numbers; infinities as the string "inf"/"-inf".
Json finite_or_inf(double v);

} // namespace coreep
